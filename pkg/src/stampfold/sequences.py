"""Named counting sequences, the identity battery and the bundled tables."""

from __future__ import annotations

import hashlib
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from . import shapes
from .enumeration import count_foldings_parallel
from .folding import BRUTE_FORCE_MAX_N, brute_force_foldings

DATA_ENV = "STAMPFOLD_DATA_DIR"
MANIFEST = "MANIFEST.sha256"

# sequences indexed by p, with n = 2p + 1
P_INDEXED = frozenset({"k", "k_o"})

# name -> (first index, largest index computed by default)
GUARDS: dict[str, tuple[int, int]] = {
    "r": (1, 18),
    "t": (1, 18),
    "z": (1, 19),
    "k": (0, 9),
    "k_o": (0, 9),
    "b": (1, 14),
    "m": (1, 14),
    "a": (1, 14),
    "M": (1, 7),
    "q": (1, 14),
    "r_o": (1, 16),
    "t_o": (1, 14),
    "t_i": (1, 14),
    "t_oo": (1, 14),
    "t_io": (1, 14),
    "t_oi": (1, 14),
    "t_ii": (1, 14),
}

SEQUENCE_NAMES = tuple(GUARDS)


class GuardError(ValueError):
    pass


class ReferenceDataError(RuntimeError):
    pass


@dataclass(frozen=True)
class SequenceTable:
    name: str
    values: Mapping[int, int]
    provenance: str = "computed"

    def __post_init__(self):
        idx = sorted(self.values)
        if idx and idx != list(range(idx[0], idx[-1] + 1)):
            raise ValueError("%s: indices are not contiguous" % self.name)
        if any(v < 0 for v in self.values.values()):
            raise ValueError("%s: negative count" % self.name)
        object.__setattr__(self, "values", MappingProxyType(dict(sorted(self.values.items()))))

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __contains__(self, i: int) -> bool:
        return i in self.values

    def __len__(self) -> int:
        return len(self.values)

    @property
    def first(self) -> int:
        return min(self.values)

    @property
    def last(self) -> int:
        return max(self.values)

    def items(self):
        return self.values.items()


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    checked: tuple[int, ...]
    status: str
    first_failure: tuple[int, object, object] | None = None
    description: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def line(self) -> str:
        span = "%d..%d" % (self.checked[0], self.checked[-1]) if self.checked else "(empty)"
        text = "%-4s %-8s %s  [%s]" % (self.status.upper(), self.identity_id, self.description, span)
        if self.first_failure is not None:
            n, lhs, rhs = self.first_failure
            text += "  first failure at %d: %s != %s" % (n, lhs, rhs)
        return text


def _report(identity_id: str, description: str, cases: Iterable[tuple[int, object, object]]) -> IdentityReport:
    checked = []
    failure = None
    for n, lhs, rhs in cases:
        checked.append(n)
        if failure is None and lhs != rhs:
            failure = (n, lhs, rhs)
    return IdentityReport(identity_id, tuple(checked), "fail" if failure else "pass", failure, description)


# ---------------------------------------------------------------- computing


def _t_family(attr: str) -> Callable[[int], int]:
    return lambda n: getattr(shapes.census(n), attr)


def _computer(name: str, workers: int) -> Callable[[int], int]:
    r = lambda n: count_foldings_parallel(n, workers)
    table = {
        "r": r,
        "t": lambda n: n * r(n),
        "z": _z,
        "k": shapes.count_symmetric_shapes,
        "k_o": shapes.count_symmetric_out_shapes,
        "b": shapes.count_blank_shapes,
        "m": shapes.count_meanders,
        "a": shapes.count_meander_shapes,
        "M": shapes.count_closed_meanders,
        "q": shapes.count_symmetric_meanders,
        "r_o": shapes.count_semi_meanders_out,
    }
    if name in table:
        return table[name]
    return _t_family(name)


def _z(n: int) -> int:
    z = shapes.count_symmetric_foldings(n)
    if n <= BRUTE_FORCE_MAX_N and z != shapes.census(n).z:
        raise shapes.InconsistencyError("z(%d): tree counter %d, direct filter %d"
                                        % (n, z, shapes.census(n).z))
    return z


def compute_sequence(name: str, n_max: int, workers: int = 1, guard: int | None = None) -> SequenceTable:
    """Compute ``name`` for every index from its first up to ``n_max``.

    For ``k`` and ``k_o`` the index is p (n = 2p + 1).
    """
    if name not in GUARDS:
        raise KeyError("unknown sequence %r" % name)
    first, default_guard = GUARDS[name]
    limit = default_guard if guard is None else guard
    if n_max > limit:
        raise GuardError("%s: n_max=%d exceeds the guard %d" % (name, n_max, limit))
    f = _computer(name, workers)
    return SequenceTable(name, {n: f(n) for n in range(first, n_max + 1)}, "computed")


# ---------------------------------------------------------------- reference data


def data_dir() -> Path:
    override = os.environ.get(DATA_ENV)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def _read_manifest(directory: Path) -> dict[str, str]:
    path = directory / MANIFEST
    if not path.is_file():
        raise ReferenceDataError("missing manifest %s" % path)
    digests = {}
    for line in path.read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        digest, fname = line.split()
        digests[fname] = digest
    return digests


def parse_tsv(text: str, name: str) -> dict[int, int]:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ReferenceDataError("%s:%d: expected '<index>\\t<value>'" % (name, lineno))
        try:
            values[int(parts[0])] = int(parts[1])
        except ValueError:
            raise ReferenceDataError("%s:%d: not an integer row" % (name, lineno)) from None
    return values


def load_reference_tables(directory: str | Path | None = None) -> dict[str, SequenceTable]:
    """Read the bundled tables, verifying each file against the manifest."""
    directory = Path(directory) if directory is not None else data_dir()
    digests = _read_manifest(directory)
    tables = {}
    for fname, digest in sorted(digests.items()):
        path = directory / fname
        if not path.is_file():
            raise ReferenceDataError("missing reference file %s" % path)
        raw = path.read_bytes()
        if hashlib.sha256(raw).hexdigest() != digest:
            raise ReferenceDataError("checksum mismatch for %s" % fname)
        name = fname.rsplit(".", 1)[0]
        try:
            tables[name] = SequenceTable(name, parse_tsv(raw.decode(), fname), "reference")
        except ValueError as exc:
            raise ReferenceDataError(str(exc)) from exc
    if "t_io" in tables:
        tables["t_oi"] = SequenceTable("t_oi", dict(tables["t_io"].values), "reference")
    return tables


def compare_to_reference(computed: SequenceTable,
                         reference: Mapping[str, SequenceTable] | None = None) -> IdentityReport:
    if reference is None:
        reference = load_reference_tables()
    ref = reference[computed.name]
    common = sorted(set(computed.values) & set(ref.values))
    return _report("ref:" + computed.name, "%s matches the bundled table" % computed.name,
                   ((n, computed[n], ref[n]) for n in common))


# ---------------------------------------------------------------- identity battery


def _partial_sums(t_i: Callable[[int], int], n: int) -> Fraction:
    return sum((Fraction(t_i(k), math.factorial(k)) for k in range(3, n)), Fraction(0))


def verify_identities(n_max: int = 12, oracle_max: int = 8) -> list[IdentityReport]:
    """Run identities I1..I15 on freshly computed counts up to ``n_max``.

    Labeled totals t(n) come from the brute-force oracle for n <= oracle_max
    and from the orbit enumeration above that.
    """
    if n_max < 4:
        raise ValueError("n_max must be >= 4")
    C = shapes.census
    r = count_foldings_parallel
    ns = range(1, n_max + 1)
    oracle_max = min(oracle_max, BRUTE_FORCE_MAX_N)

    def t(n: int) -> int:
        if n <= oracle_max:
            return sum(1 for _ in brute_force_foldings(n))
        return C(n).t

    t_vals = {n: t(n) for n in ns}
    m = {n: C(n).m for n in ns}
    ko = {p: shapes.count_symmetric_out_shapes(p) for p in range((n_max - 1) // 2 + 1)}
    rep = []
    rep.append(_report("I1", "t(n) = n r(n)", ((n, t_vals[n], n * r(n)) for n in ns)))
    rep.append(_report("I2", "4 b(n) = t(n) + z(n)",
                       ((n, 4 * C(n).b, t_vals[n] + C(n).z) for n in ns if n > 1)))
    rep.append(_report("I3", "z(2p) = 2 r(p+1)",
                       ((n, C(n).z, 2 * r(n // 2 + 1)) for n in ns if n % 2 == 0)))
    rep.append(_report("I4", "2 k(p) = z(2p+1)",
                       ((n, 2 * shapes.count_symmetric_shapes((n - 1) // 2), C(n).z)
                        for n in ns if n % 2 and n > 1)))
    rep.append(_report("I5", "t(n) = t_o(n) + t_i(n) = n t_o(n-1)",
                       ((n, (t_vals[n], t_vals[n]), (C(n).t_o + C(n).t_i, n * C(n - 1).t_o))
                        for n in ns if n > 1)))
    rep.append(_report("I6", "t_o(n) = r(n+1)", ((n, C(n).t_o, r(n + 1)) for n in ns)))
    rep.append(_report("I7", "t(n)/n! = 1 - sum_{k=3}^{n-1} t_i(k)/k!",
                       ((n, Fraction(t_vals[n], math.factorial(n)),
                         1 - _partial_sums(lambda k: C(k).t_i, n)) for n in ns)))
    rep.append(_report("I8", "t = t_oo + 2 t_io + t_ii and t_io = t_oi",
                       ((n, (t_vals[n], C(n).t_io), (C(n).t_oo + 2 * C(n).t_io + C(n).t_ii, C(n).t_oi))
                        for n in ns)))
    rep.append(_report("I9", "m(2p-1) = t_oo(2p-1), 2 m(2p) = t_oo(2p)",
                       ((n, m[n] * (2 - n % 2), C(n).t_oo) for n in ns)))
    rep.append(_report("I10", "m(n) = r_o(n+1)",
                       ((n, m[n], shapes.count_semi_meanders_out(n + 1)) for n in ns)))

    def a_formula(n: int) -> Fraction:
        if n % 2 == 0:
            return Fraction(m[n] + m[n // 2], 2)
        return Fraction(m[n] + 2 * ko[(n - 1) // 2], 4)

    rep.append(_report("I11", "a(2p) = (m(2p)+m(p))/2, a(2p+1) = (m(2p+1)+2k_o(p))/4",
                       ((n, C(n).a, a_formula(n)) for n in ns if n > 1)))
    rep.append(_report("I12", "a(n) = b_oo(n)", ((n, C(n).a, C(n).b_oo) for n in ns)))
    rep.append(_report("I13", "q(2p) = m(p), q(2p+1) = 2 k_o(p)",
                       ((n, C(n).q, m[n // 2] if n % 2 == 0 else 2 * ko[(n - 1) // 2])
                        for n in ns if n > 1)))
    rep.append(_report("I14", "M(n) = m(2n-1)",
                       ((n, shapes.count_closed_meanders_direct(n), m[2 * n - 1])
                        for n in range(1, (n_max + 1) // 2 + 1))))
    rep.append(_report("I15", "r(n) even for n > 2, z(n) even for n > 1",
                       ((n, (r(n) % 2 if n > 2 else 0, C(n).z % 2), (0, 0)) for n in ns if n > 1)))
    return rep


def verify_reference_identities(tables: Mapping[str, SequenceTable] | None = None) -> list[IdentityReport]:
    """The identity web checked on the bundled tables by exact arithmetic alone.

    Quantities the tables do not carry are derived from the counting
    relations that define them:  z from 4 b = t + z,
    r_o(p+1) = 2 a(2p) - m(2p) from the b_oo(2p) relation, and
    q = 2a - m (even) or 4a - m (odd) from the orbit counts of meander
    shapes.  M(n) is counted directly for small n.
    """
    T = load_reference_tables() if tables is None else tables
    r, b, k, m, a, ko = (T[x] for x in ("r", "b", "k", "m", "a", "k_o"))
    t_o, t_i, t_oo, t_io, t_oi, t_ii = (T[x] for x in ("t_o", "t_i", "t_oo", "t_io", "t_oi", "t_ii"))
    n1 = range(1, t_o.last + 1)
    nb = range(2, min(b.last, r.last) + 1)

    def t(n: int) -> int:
        return n * r[n]

    def z_pred(n: int) -> int:
        return 2 * r[n // 2 + 1] if n % 2 == 0 else 2 * k[(n - 1) // 2]

    def z_from_b(n: int) -> int:
        return 4 * b[n] - t(n)

    na = range(1, min(m.last, a.last) + 1)
    rep = []
    rep.append(_report("I1", "t_o(n) + t_i(n) = n r(n)", ((n, t_o[n] + t_i[n], t(n)) for n in n1)))
    rep.append(_report("I2", "4 b(n) = t(n) + z(n), z from r and k",
                       ((n, 4 * b[n], t(n) + z_pred(n)) for n in nb
                        if (n % 2 == 0 and n // 2 + 1 in r) or (n % 2 and (n - 1) // 2 in k))))
    rep.append(_report("I3", "z(2p) = 2 r(p+1), z = 4b - t",
                       ((n, z_from_b(n), 2 * r[n // 2 + 1]) for n in nb if n % 2 == 0)))
    rep.append(_report("I4", "2 k(p) = z(2p+1), z = 4b - t",
                       ((n, 2 * k[(n - 1) // 2], z_from_b(n)) for n in nb if n % 2)))
    rep.append(_report("I5", "t(n) = t_o(n) + t_i(n) = n t_o(n-1)",
                       ((n, (t(n), t(n)), (t_o[n] + t_i[n], n * t_o[n - 1])) for n in n1 if n > 1)))
    rep.append(_report("I6", "t_o(n) = r(n+1)", ((n, t_o[n], r[n + 1]) for n in n1)))
    rep.append(_report("I7", "t(n)/n! = 1 - sum_{k=3}^{n-1} t_i(k)/k!",
                       ((n, Fraction(t(n), math.factorial(n)), 1 - _partial_sums(t_i.__getitem__, n))
                        for n in n1)))
    rep.append(_report("I8", "t = t_oo + 2 t_io + t_ii and t_io = t_oi",
                       ((n, (t(n), t_io[n]), (t_oo[n] + 2 * t_io[n] + t_ii[n], t_oi[n])) for n in n1)))
    rep.append(_report("I9", "m(2p-1) = t_oo(2p-1), 2 m(2p) = t_oo(2p)",
                       ((n, m[n] * (2 - n % 2), t_oo[n]) for n in n1)))
    rep.append(_report("I10", "m(p) = r_o(p+1), r_o(p+1) = 2 a(2p) - m(2p)",
                       ((p, m[p], 2 * a[2 * p] - m[2 * p]) for p in na if 2 * p in a)))

    def a_formula(n: int) -> Fraction:
        if n % 2 == 0:
            return Fraction(m[n] + m[n // 2], 2)
        return Fraction(m[n] + 2 * ko[(n - 1) // 2], 4)

    rep.append(_report("I11", "a(2p) = (m(2p)+m(p))/2, a(2p+1) = (m(2p+1)+2k_o(p))/4",
                       ((n, a[n], a_formula(n)) for n in na if n > 1)))

    def b_oo(n: int) -> Fraction:
        z_oo = 2 * ko[(n - 1) // 2] if n % 2 else 2 * m[n // 2]
        return Fraction(t_oo[n] + z_oo, 4)

    rep.append(_report("I12", "a(n) = b_oo(n) = (t_oo(n) + z_oo(n))/4",
                       ((n, a[n], b_oo(n)) for n in n1 if n > 1)))

    def q_from_a(n: int) -> int:
        return 2 * a[n] - m[n] if n % 2 == 0 else 4 * a[n] - m[n]

    rep.append(_report("I13", "q(2p) = m(p), q(2p+1) = 2 k_o(p), q from a and m",
                       ((n, q_from_a(n), m[n // 2] if n % 2 == 0 else 2 * ko[(n - 1) // 2])
                        for n in na if n > 1)))
    rep.append(_report("I14", "M(n) = m(2n-1), M counted directly",
                       ((n, shapes.count_closed_meanders_direct(n), m[2 * n - 1]) for n in range(1, 7))))
    rep.append(_report("I15", "r(n) even for n > 2, z(n) even for n > 1",
                       ((n, (r[n] % 2 if n > 2 else 0, z_from_b(n) % 2), (0, 0)) for n in nb)))
    return rep


def partial_sum_bounds(tables: Mapping[str, SequenceTable] | None = None) -> IdentityReport:
    """sum_{k=3}^{N} t_i(k)/k! stays below 1 and grows with N."""
    T = load_reference_tables() if tables is None else tables
    t_i = T["t_i"]
    prev = Fraction(0)
    cases = []
    s = Fraction(0)
    for n in range(3, t_i.last + 1):
        s += Fraction(t_i[n], math.factorial(n))
        cases.append((n, (s < 1, s >= prev), (True, True)))
        prev = s
    return _report("S1", "partial sums of t_i(k)/k! increase and stay below 1", cases)


def oracle_reports(n_max: int = 8) -> list[IdentityReport]:
    """Insertion-tree enumerators and counters against brute force, n <= n_max."""
    from .enumeration import all_folding_listings, semi_meander_listings
    from .folding import classify_ends
    from .perm import is_symmetric

    n_max = min(n_max, BRUTE_FORCE_MAX_N)
    ns = range(1, n_max + 1)
    brute = {n: [f.listing for f in brute_force_foldings(n)] for n in ns}

    def families(n):
        fam = {"t_oo": 0, "t_io": 0, "t_oi": 0, "t_ii": 0}
        for p in brute[n]:
            e = classify_ends(p)
            key = "t_" + ("o" if e.leaf1_out else "i") + ("o" if e.leafn_out else "i")
            # t_io is leaf 1 in, leaf n out
            fam[key] += 1
        return fam

    rep = [
        _report("O1", "tree enumeration of T_n equals brute force",
                ((n, set(all_folding_listings(n)), set(brute[n])) for n in ns)),
        _report("O2", "semi-meander tree equals brute-force foldings with leaf 1 on top",
                ((n, set(semi_meander_listings(n)), {p for p in brute[n] if p[0] == 1}) for n in ns)),
        _report("O3", "z counters equal brute-force symmetric count",
                ((n, shapes.count_symmetric_foldings(n), sum(1 for p in brute[n] if is_symmetric(p)))
                 for n in ns)),
        _report("O4", "census end classes equal brute-force end classes",
                ((n, {k: getattr(shapes.census(n), k) for k in ("t_oo", "t_io", "t_oi", "t_ii")},
                  families(n)) for n in ns)),
        _report("O5", "b, m, a from the shape counters equal brute-force canonical dedupe",
                ((n, (shapes.count_blank_shapes(n), shapes.count_meanders(n),
                      shapes.count_meander_shapes(n)),
                  _brute_shapes(brute[n])) for n in ns)),
    ]
    return rep


def _brute_shapes(foldings) -> tuple[int, int, int]:
    from .perm import group_images
    from .shapes import is_meander

    b = len({min(group_images(p)) for p in foldings})
    meanders = [p for p in foldings if is_meander(p)]
    a = len({min(group_images(p)) for p in meanders})
    return b, len(meanders), a
