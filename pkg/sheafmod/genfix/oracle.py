"""Definition-level brute force over plain Python lists, diffed against the library's verdicts."""

import logging
from dataclasses import dataclass
from itertools import combinations, product

from sheafmod.bmodule.construct import make_blocale
from sheafmod.bmodule.laws import check_module_laws, check_stability
from sheafmod.bmodule.models import BLocale, BModule, ModuleHom
from sheafmod.bmodule.morphism import identity_hom, zero_hom
from sheafmod.bmodule.support import support_candidate
from sheafmod.config import LimitsConfig
from sheafmod.errors import NotABLocale
from sheafmod.hilbert.basis import basis_properties, etale_based, etale_equivalence_check
from sheafmod.hilbert.inner import support_hilbert
from sheafmod.hilbert.models import BasedModule, Verdict
from sheafmod.homs.adjoint import adjoint
from sheafmod.homs.maps import check_dagger_is_direct_image, direct_image
from sheafmod.homs.models import BLocaleMap
from sheafmod.homs.sheaf import is_sheaf_hom
from sheafmod.lattice.frame import verify_frame
from sheafmod.lattice.models import Lattice
from sheafmod.matrix.algebra import is_projection_matrix
from sheafmod.matrix.modules import check_module_roundtrip, matrix_from_module
from sheafmod.report import LawReport

logger = logging.getLogger(__name__)

Table = list[list[int]]
Verdicts = dict[str, object]

FROBENIUS = "f_!(x ^ f*(y)) = f_!(x) ^ y"


def _is_frame(join: Table, meet: Table) -> bool:
    n = len(join)
    top = n - 1
    r = range(n)
    for x in r:
        if join[x][x] != x or meet[x][x] != x:
            return False
        if join[0][x] != x or meet[top][x] != x or meet[0][x] != 0 or join[top][x] != top:
            return False
    for x, y in product(r, r):
        if join[x][y] != join[y][x] or meet[x][y] != meet[y][x]:
            return False
        if join[x][meet[x][y]] != x or meet[x][join[x][y]] != x:
            return False
    for x, y, z in product(r, r, r):
        if join[join[x][y]][z] != join[x][join[y][z]]:
            return False
        if meet[meet[x][y]][z] != meet[x][meet[y][z]]:
            return False
        if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
            return False
    return True


def _module_laws(bj: Table, bm: Table, xj: Table, act: Table) -> bool:
    nb, nx = len(bj), len(xj)
    if any(act[0][x] != 0 for x in range(nx)) or any(act[b][0] != 0 for b in range(nb)):
        return False
    if any(act[nb - 1][x] != x for x in range(nx)):
        return False
    for a, b, x in product(range(nb), range(nb), range(nx)):
        if act[bj[a][b]][x] != xj[act[a][x]][act[b][x]]:
            return False
        if act[a][act[b][x]] != act[bm[a][b]][x]:
            return False
    for b, x, y in product(range(nb), range(nx), range(nx)):
        if act[b][xj[x][y]] != xj[act[b][x]][act[b][y]]:
            return False
    return True


def _stable(xm: Table, act: Table) -> bool:
    top = len(xm) - 1
    return all(
        act[b][x] == xm[act[b][top]][x] for b in range(len(act)) for x in range(len(xm))
    )


def _leq(join: Table, x: int, y: int) -> bool:
    return join[x][y] == y


@dataclass
class _Tables:
    """A B-locale as plain lists, with its support and local sections from the definitions."""

    bj: Table
    bm: Table
    xj: Table
    xm: Table
    act: Table
    spp: list[int]
    sections: tuple[int, ...]
    inner: Table

    @property
    def size(self) -> int:
        return len(self.xj)

    @property
    def is_open(self) -> bool:
        nb, nx = len(self.bj), self.size
        return all(self.act[self.spp[x]][x] == x for x in range(nx)) and all(
            self.spp[self.act[b][x]] == self.bm[b][self.spp[x]]
            for b in range(nb)
            for x in range(nx)
        )

    @property
    def etale(self) -> bool:
        cover = 0
        for s in self.sections:
            cover = self.xj[cover][s]
        return cover == self.size - 1


def _tables(module: BModule) -> _Tables:
    bj, bm = module.base.join_table.tolist(), module.base.meet_table.tolist()
    xj, xm = module.carrier.join_table.tolist(), module.carrier.meet_table.tolist()
    act = module.action.tolist()
    nb, nx = len(bj), len(xj)

    # spp(x) = meet {b : x <= b1}
    spp = []
    for x in range(nx):
        value = nb - 1
        for b in range(nb):
            if _leq(xj, x, act[b][nx - 1]):
                value = bm[value][b]
        spp.append(value)
    sections = tuple(
        s for s in range(nx) if all(act[spp[x]][s] == x for x in range(nx) if _leq(xj, x, s))
    )
    inner = [[spp[xm[x][y]] for y in range(nx)] for x in range(nx)]
    return _Tables(bj, bm, xj, xm, act, spp, sections, inner)


def _reconstructs(t: _Tables, family: tuple[int, ...] | list[int]) -> bool:
    for x in range(t.size):
        value = 0
        for s in family:
            value = t.xj[value][t.act[t.inner[x][s]][s]]
        if value != x:
            return False
    return True


def _has_basis(t: _Tables, limits: LimitsConfig) -> bool:
    """Try every family of non-zero elements, smallest first, up to the search guard."""
    nx = t.size
    if nx > limits.basis_search_carrier:
        # a basis only uses elements whose terms stay below every x, and
        # reconstruction is monotone in the family
        admissible = [
            s
            for s in range(nx)
            if all(_leq(t.xj, t.act[t.inner[x][s]][s], x) for x in range(nx))
        ]
        return _reconstructs(t, admissible)
    nonzero = range(1, nx)
    return any(
        _reconstructs(t, family) for r in range(nx) for family in combinations(nonzero, r)
    )


def _is_projection(bj: Table, bm: Table, m: Table) -> bool:
    k = len(m)
    for s, t in product(range(k), range(k)):
        if m[s][t] != m[t][s]:
            return False
        value = 0
        for u in range(k):
            value = bj[value][bm[m[s][u]][m[u][t]]]
        if value != m[s][t]:
            return False
    return True


def _basis_clauses(t: _Tables) -> tuple[bool, ...]:
    """The eight basis clauses for the local sections, in order."""
    bj, bm, xj, act, ip = t.bj, t.bm, t.xj, t.act, t.inner
    sigma, nb, nx = t.sections, len(t.bj), t.size
    coords = [[ip[x][s] for s in sigma] for x in range(nx)]
    k = range(len(sigma))

    joins = all(
        coords[xj[x][y]][i] == bj[coords[x][i]][coords[y][i]]
        for x in range(nx)
        for y in range(nx)
        for i in k
    )
    equivariant = all(
        coords[act[b][x]][i] == bm[b][coords[x][i]]
        for b in range(nb)
        for x in range(nx)
        for i in k
    )
    cover = 0
    for s in sigma:
        cover = xj[cover][s]

    def through_sigma(x: int, y: int) -> int:
        value = 0
        for s in sigma:
            value = bj[value][bm[ip[x][s]][ip[s][y]]]
        return value

    def clause7(x: int, s: int) -> bool:
        below = _leq(xj, x, s)
        return below == (act[ip[x][x]][s] == x) == (act[ip[x][s]][s] == x)

    return (
        joins and equivariant and _reconstructs(t, sigma),
        cover == nx - 1,
        len({tuple(row) for row in coords}) == nx,
        all(ip[x][y] == through_sigma(x, y) for x in range(nx) for y in range(nx)),
        all(act[ip[x][x]][x] == x for x in range(nx)),
        all(_leq(bj, ip[x][y], ip[x][x]) for x in range(nx) for y in range(nx)),
        all(clause7(x, s) for x in range(nx) for s in sigma),
        _is_projection(bj, bm, [[ip[s][u] for u in sigma] for s in sigma]),
    )


def _matrix_module(t: _Tables, gram: Table) -> bool:
    """{v : Mv = v} is exactly the set of coordinate vectors <x,-> of the module."""
    bj, bm = t.bj, t.bm
    k = len(gram)
    fixed = set()
    for v in product(range(len(bj)), repeat=k):
        image = []
        for s in range(k):
            value = 0
            for u in range(k):
                value = bj[value][bm[gram[s][u]][v[u]]]
            image.append(value)
        if tuple(image) == v:
            fixed.add(v)
    coords = {tuple(t.inner[x][s] for s in t.sections) for x in range(t.size)}
    return fixed == coords


def _is_module_hom(source: _Tables, target: _Tables, h: list[int]) -> bool:
    n = source.size
    return (
        h[0] == 0
        and all(
            h[source.xj[x][y]] == target.xj[h[x]][h[y]] for x in range(n) for y in range(n)
        )
        and all(
            h[source.act[b][x]] == target.act[b][h[x]]
            for b in range(len(source.bj))
            for x in range(n)
        )
    )


def _is_sheaf_hom(source: _Tables, target: _Tables, h: list[int]) -> bool:
    return (
        _is_module_hom(source, target, h)
        and all(h[s] in target.sections for s in source.sections)
        and all(target.spp[h[x]] == source.spp[x] for x in range(source.size))
    )


def _adjoint(source: _Tables, target: _Tables, h: list[int]) -> tuple[int, ...] | None:
    """h†(y) as the unique z with <x,z> = <h(x),y> for every x, or None."""
    dagger = []
    for y in range(target.size):
        solutions = [
            z
            for z in range(source.size)
            if all(source.inner[x][z] == target.inner[h[x]][y] for x in range(source.size))
        ]
        if len(solutions) != 1:
            return None
        dagger.append(solutions[0])
    return tuple(dagger)


def brute_force(subject: Lattice | BModule, limits: LimitsConfig | None = None) -> Verdicts:
    """Every verdict recomputed from the definitions."""
    limits = limits or LimitsConfig()
    if isinstance(subject, Lattice):
        return {"frame": _is_frame(subject.join_table.tolist(), subject.meet_table.tolist())}

    bj, bm = subject.base.join_table.tolist(), subject.base.meet_table.tolist()
    xj, xm = subject.carrier.join_table.tolist(), subject.carrier.meet_table.tolist()
    act = subject.action.tolist()

    verdicts: Verdicts = {
        "frame": _is_frame(xj, xm),
        "module laws": _module_laws(bj, bm, xj, act),
        "stability": _stable(xm, act),
    }
    verdicts["B-locale"] = all(verdicts.values())
    if not verdicts["B-locale"]:
        return verdicts

    t = _tables(subject)
    nx = t.size
    verdicts["support"] = tuple(t.spp)
    verdicts["open"] = t.is_open
    if not t.is_open:
        return verdicts

    verdicts["sections"] = t.sections
    verdicts["étale"] = t.etale

    rows = [tuple(row) for row in t.inner]
    negation = []
    for x in range(nx):
        value = 0
        for z in range(nx):
            if xm[z][x] == 0:
                value = xj[value][z]
        negation.append(value)
    verdicts["nondegenerate"] = len(set(rows)) == nx
    verdicts["weakly nondegenerate"] = all(
        negation[x] == negation[y]
        for x in range(nx)
        for y in range(nx)
        if rows[x] == rows[y]
    )
    verdicts["strict"] = all(t.inner[x][x] != 0 for x in range(1, nx))
    verdicts["supported"] = all(act[t.inner[x][x]][x] == x for x in range(nx))
    verdicts["has Hilbert basis"] = _has_basis(t, limits)
    if not t.etale:
        return verdicts

    gram = [[t.inner[s][u] for u in t.sections] for s in t.sections]
    verdicts["basis clauses"] = _basis_clauses(t)
    verdicts["projection matrix"] = tuple(tuple(row) for row in gram)
    verdicts["projection laws"] = _is_projection(bj, bm, gram)
    if len(bj) ** len(gram) <= limits.max_free_carrier:
        verdicts["matrix module"] = _matrix_module(t, gram)
    identity, zero = list(range(nx)), [0] * nx
    verdicts["sheaf homs"] = (_is_sheaf_hom(t, t, identity), _is_sheaf_hom(t, t, zero))
    verdicts["adjoints"] = (_adjoint(t, t, identity), _adjoint(t, t, zero))
    return verdicts


def _cached_adjoint(hom: ModuleHom, basis: BasedModule) -> tuple[int, ...] | None:
    result = adjoint(hom, basis, basis.hilbert)
    return tuple(int(v) for v in result.hom.table) if result.report.passed else None


def cached_verdicts(subject: Lattice | BModule, limits: LimitsConfig | None = None) -> Verdicts:
    """The same verdicts as the library computes them."""
    limits = limits or LimitsConfig()
    if isinstance(subject, Lattice):
        return {"frame": verify_frame(subject, limits).passed}

    verdicts: Verdicts = {
        "frame": verify_frame(subject.carrier, limits).passed,
        "module laws": check_module_laws(subject).passed,
        "stability": check_stability(subject).passed,
    }
    try:
        locale = subject if isinstance(subject, BLocale) else make_blocale(subject, limits)
    except NotABLocale:
        verdicts["B-locale"] = False
        return verdicts
    verdicts["B-locale"] = True
    verdicts["support"] = tuple(int(v) for v in support_candidate(locale))
    verdicts["open"] = locale.is_open
    if not locale.is_open:
        return verdicts

    verdicts["sections"] = tuple(locale.sections)
    verdicts["étale"] = locale.etale
    hilbert = support_hilbert(locale)
    verdicts["nondegenerate"] = hilbert.nondegenerate.passed
    weak = hilbert.weakly_nondegenerate
    verdicts["weakly nondegenerate"] = weak is not None and weak.passed
    verdicts["strict"] = hilbert.strict.passed
    verdicts["supported"] = hilbert.supported.passed
    equivalence = etale_equivalence_check(locale, limits)
    verdicts["has Hilbert basis"] = equivalence.pre_hilbert_with_basis is Verdict.YES
    if not locale.etale:
        return verdicts

    basis = etale_based(locale)
    matrix = matrix_from_module(basis)
    verdicts["basis clauses"] = tuple(r.passed for r in basis_properties(basis).results)
    verdicts["projection matrix"] = tuple(tuple(int(v) for v in row) for row in matrix.entries)
    verdicts["projection laws"] = is_projection_matrix(matrix).passed
    if locale.base.size ** len(basis.basis.elements) <= limits.max_free_carrier:
        verdicts["matrix module"] = check_module_roundtrip(basis, limits).passed
    identity, zero = identity_hom(locale), zero_hom(locale, locale)
    verdicts["sheaf homs"] = (is_sheaf_hom(identity).passed, is_sheaf_hom(zero).passed)
    verdicts["adjoints"] = (_cached_adjoint(identity, basis), _cached_adjoint(zero, basis))
    return verdicts


def brute_force_map(fmap: BLocaleMap) -> Verdicts:
    """Direct image, adjunction, Frobenius and daggers of a map, from the definitions."""
    source, target = _tables(fmap.source), _tables(fmap.target)
    fstar = [int(v) for v in fmap.inverse_image]
    shriek = []
    for x in range(source.size):
        value = target.size - 1
        for y in range(target.size):
            if _leq(source.xj, x, fstar[y]):
                value = target.xm[value][y]
        shriek.append(value)

    unit = all(_leq(source.xj, x, fstar[shriek[x]]) for x in range(source.size))
    counit = all(_leq(target.xj, shriek[fstar[y]], y) for y in range(target.size))
    verdicts: Verdicts = {"direct image": tuple(shriek), "adjunction": unit and counit}
    if not (source.etale and target.etale):
        return verdicts
    verdicts["Frobenius"] = all(
        shriek[source.xm[x][fstar[y]]] == target.xm[shriek[x]][y]
        for x in range(source.size)
        for y in range(target.size)
    )
    verdicts["direct image is sheaf hom"] = _is_sheaf_hom(source, target, shriek)
    fstar_dagger = _adjoint(target, source, fstar)
    shriek_dagger = _adjoint(source, target, shriek)
    verdicts["dagger is direct image"] = (
        fstar_dagger == tuple(shriek) and shriek_dagger == tuple(fstar)
    )
    return verdicts


def cached_map_verdicts(fmap: BLocaleMap) -> Verdicts:
    """The map verdicts as the library computes them."""
    shriek, report = direct_image(fmap)
    verdicts: Verdicts = {
        "direct image": tuple(int(v) for v in shriek.table),
        "adjunction": all(r.passed for r in report.results if r.law != FROBENIUS),
    }
    frobenius = report.verdict(FROBENIUS)
    if frobenius is None:
        return verdicts
    verdicts["Frobenius"] = frobenius.passed
    verdicts["direct image is sheaf hom"] = is_sheaf_hom(shriek).passed
    verdicts["dagger is direct image"] = check_dagger_is_direct_image(fmap).passed
    return verdicts


def _diff(subject: str, oracle: Verdicts, cached: Verdicts) -> LawReport:
    report = LawReport(subject=f"oracle diff on {subject}")
    keys = list(oracle) + [k for k in cached if k not in oracle]
    for key in keys:
        if key not in oracle or key not in cached:
            report.check(f"oracle agrees: {key}", False, "verdict computed on one side only")
            continue
        same = oracle[key] == cached[key]
        if not same:
            logger.warning("oracle disagrees on %s for %s", key, subject)
        report.check(
            f"oracle agrees: {key}",
            same,
            f"oracle={oracle[key]}, cached={cached[key]}",
            note=None if isinstance(oracle[key], tuple) else f"{key}={oracle[key]}",
        )
    return report


def oracle_verify(subject: Lattice | BModule, limits: LimitsConfig | None = None) -> LawReport:
    """Diff brute-force verdicts against cached ones; any disagreement fails the report."""
    return _diff(subject.name, brute_force(subject, limits), cached_verdicts(subject, limits))


def oracle_verify_map(fmap: BLocaleMap) -> LawReport:
    """Diff the brute-force map verdicts against the library's."""
    return _diff(fmap.name, brute_force_map(fmap), cached_map_verdicts(fmap))
