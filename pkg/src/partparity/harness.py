"""Per-discriminant verification: class-side structure, parity searches, series checks."""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .arith import is_squarefree, prime_factors
from .heegner import class_group, heegner_set, odd_order_equivalences, orbit_report
from .partitions import ParityBitmap, parity_bitmap

INDEX_CAP = 10**7
LAMBERT_DEFAULT = frozenset({23, 47})


def is_admissible(D: int) -> bool:
    return (
        D > 1
        and D % 24 == 23
        and is_squarefree(D)
        and all(p % 8 in (1, 7) for p in prime_factors(D))
    )


def candidate_discriminants(d_max: int) -> list[int]:
    """Square-free D = 23 mod 24 up to d_max."""
    return [D for D in range(23, d_max + 1, 24) if is_squarefree(D)]


def odd_bound(h: int) -> int:
    return 12 * h + 2


def even_bound(D: int, h: int) -> int:
    return odd_bound(h) * math.prod(ell + 1 for ell in prime_factors(D))


class ParitySource:
    """Parity lookups backed by a bitmap that grows on demand, up to a hard index cap."""

    def __init__(self, bitmap: ParityBitmap | None = None, cap: int = INDEX_CAP):
        self.bitmap = bitmap if bitmap is not None else parity_bitmap(1024)
        self.cap = cap

    def __getitem__(self, n: int) -> int:
        if n >= self.bitmap.limit:
            if n >= self.cap:
                raise IndexError(f"p({n}) beyond the index cap {self.cap}")
            self.bitmap = parity_bitmap(min(self.cap, max(2 * self.bitmap.limit, n + 1)))
        return self.bitmap[n]


def _as_source(bitmap) -> ParitySource:
    if isinstance(bitmap, ParitySource):
        return bitmap
    return ParitySource(bitmap)


def _search(D: int, parity: int, source: ParitySource) -> int | None:
    if D % 24 != 23:
        raise ValueError(f"need D = 23 mod 24, got {D}")
    m = 1
    while True:
        if m % 2 and m % 3:
            n = (D * m * m + 1) // 24
            if n >= source.cap:
                return None
            if source[n] == parity:
                return m
        m += 1


def first_odd(D: int, bitmap=None) -> int | None:
    """Least m prime to 6 with p((Dm^2+1)/24) odd, or None below the index cap."""
    return _search(D, 1, _as_source(bitmap))


def first_even(D: int, bitmap=None) -> int | None:
    return _search(D, 0, _as_source(bitmap))


@dataclass
class VerifyConfig:
    order: int = 300
    lambert: bool | None = None
    index_cap: int = INDEX_CAP

    def wants_lambert(self, D: int) -> bool:
        return D in LAMBERT_DEFAULT if self.lambert is None else self.lambert


@dataclass
class ParityReport:
    D: int
    admissible: bool
    h: int = 0
    frob_order: int = 0
    orbit_count: int = 0
    eps_profile: list[int] = field(default_factory=list)
    first_odd_m: int | None = None
    first_even_m: int | None = None
    odd_bound: int = 0
    even_bound: int = 0
    bounds_ok: bool = False
    lambert_checked_to: int = 0
    lambert_mismatches: list[int] = field(default_factory=list)
    heegner_size: int = 0
    orbits_uniform: bool = False
    residue_parity_one: bool = False
    conditions: list[bool] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ParityReport":
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"unknown report fields: {sorted(unknown)}")
        return cls(**d)


class StageError(RuntimeError):
    def __init__(self, D: int, stage: str, cause: BaseException):
        super().__init__(f"D={D}: stage '{stage}' failed: {cause}")
        self.D = D
        self.stage = stage
        self.cause = cause


def verify_discriminant(D: int, config: VerifyConfig | None = None, bitmap=None) -> ParityReport:
    config = config or VerifyConfig()
    source = _as_source(bitmap) if bitmap is not None else ParitySource(cap=config.index_cap)
    rep = ParityReport(D=D, admissible=is_admissible(D))

    def stage(name, fn, *args):
        try:
            return fn(*args)
        except Exception as exc:
            raise StageError(D, name, exc) from exc

    G = stage("class_group", class_group, D)
    rep.h = G.h
    hs = stage("heegner_set", heegner_set, D)
    rep.heegner_size = len(hs.reps)
    orb = stage("orbit_report", orbit_report, D)
    cond = stage("odd_order_equivalences", odd_order_equivalences, D)

    rep.frob_order = orb.frob_order
    rep.orbit_count = len(orb.orbits)
    rep.eps_profile = list(orb.orbit_eps)
    rep.orbits_uniform = orb.uniform()
    rep.residue_parity_one = orb.has_odd_residue()
    rep.conditions = list(cond.as_tuple())

    if rep.heegner_size != rep.h:
        rep.failures.append(f"heegner_set: {rep.heegner_size} reps for h={rep.h}")
    if not rep.orbits_uniform:
        rep.failures.append(f"orbit_report: sizes {orb.orbit_sizes} != {orb.frob_order}")
    if rep.admissible:
        if not (cond.characters_trivial and cond.primes_split_2):
            rep.failures.append(f"odd_order_equivalences: conditions (3),(4) = {rep.conditions[2:]}")
        if rep.frob_order % 2 == 0:
            rep.failures.append(f"odd_order_equivalences: ord([p]) = {rep.frob_order} is even")
        if not rep.residue_parity_one:
            rep.failures.append("orbit_report: no orbit with odd residue")

    rep.odd_bound = odd_bound(rep.h)
    rep.even_bound = even_bound(D, rep.h)
    rep.first_odd_m = stage("first_odd", first_odd, D, source)
    rep.first_even_m = stage("first_even", first_even, D, source)
    rep.bounds_ok = (
        rep.first_odd_m is not None
        and rep.first_even_m is not None
        and rep.first_odd_m <= rep.odd_bound
        and rep.first_even_m <= rep.even_bound
    )
    if rep.admissible and not rep.bounds_ok:
        rep.failures.append(
            f"parity search: first odd {rep.first_odd_m} (bound {rep.odd_bound}), "
            f"first even {rep.first_even_m} (bound {rep.even_bound})"
        )

    if config.wants_lambert(D):
        from .borcherds import compare_lambert, psi

        p = stage("psi", psi, D, config.order)
        need = (D * (config.order - 1) ** 2 + 1) // 24 + 1
        stage("lambert", source.__getitem__, need - 1)
        cmp = stage("lambert", compare_lambert, p, source.bitmap)
        rep.lambert_checked_to = config.order
        rep.lambert_mismatches = list(cmp.mismatches)
        if cmp.coprime_mismatches:
            rep.failures.append(f"lambert: mismatches at indices prime to D: {list(cmp.coprime_mismatches)}")
    return rep


def _initial_limit(d_max: int, cap: int) -> int:
    # enough for m <= 60 at the largest D; the searches extend it if needed
    return min(cap, (d_max * 60 * 60 + 1) // 24 + 1)


_WORKER_BITMAP: ParityBitmap | None = None


def _worker_init(bitmap: ParityBitmap) -> None:
    global _WORKER_BITMAP
    _WORKER_BITMAP = bitmap


def _verify_isolated(D: int, config: VerifyConfig, bitmap: ParityBitmap | None = None) -> ParityReport:
    bm = bitmap if bitmap is not None else _WORKER_BITMAP
    try:
        return verify_discriminant(D, config, ParitySource(bm, config.index_cap))
    except StageError as exc:
        rep = ParityReport(D=D, admissible=is_admissible(D))
        rep.failures.append(str(exc))
        return rep


def scan(d_max: int, config: VerifyConfig | None = None, jobs: int = 1) -> list[ParityReport]:
    """verify_discriminant over all square-free D = 23 mod 24 up to d_max, ascending."""
    if d_max < 23:
        raise ValueError("d_max must be >= 23")
    config = config or VerifyConfig()
    Ds = candidate_discriminants(d_max)
    bitmap = parity_bitmap(_initial_limit(d_max, config.index_cap))
    if jobs <= 1:
        reports = [_verify_isolated(D, config, bitmap) for D in Ds]
    else:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_worker_init, initargs=(bitmap,)) as ex:
            reports = list(ex.map(_verify_isolated, Ds, [config] * len(Ds)))
    return sorted(reports, key=lambda r: r.D)


CSV_FIELDS = [
    f.name
    for f in fields(ParityReport)
    if f.name not in ("eps_profile", "lambert_mismatches", "conditions", "failures")
] + ["conditions", "failures"]


def write_json(reports: list[ParityReport], path: str | Path) -> None:
    Path(path).write_text(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")


def read_json(path: str | Path) -> list[ParityReport]:
    return [ParityReport.from_dict(d) for d in json.loads(Path(path).read_text())]


def write_csv(reports: list[ParityReport], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_FIELDS)
        for r in reports:
            row = []
            for name in CSV_FIELDS:
                v = getattr(r, name)
                if name == "conditions":
                    v = "".join("1" if c else "0" for c in v)
                elif name == "failures":
                    v = " | ".join(v)
                row.append("" if v is None else v)
            w.writerow(row)


def write_reports(reports: list[ParityReport], path: str | Path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    if str(path).endswith(".csv"):
        write_csv(reports, path)
    else:
        write_json(reports, path)
