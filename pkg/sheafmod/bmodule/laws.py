"""Exhaustive checks of the module laws and of stability."""

import numpy as np

from sheafmod.bmodule.models import BModule
from sheafmod.report import LawReport, describe, first_violation


def _witness(
    module: BModule, names: str, hit: tuple[int, ...] | None, base_first: int
) -> str | None:
    """Render a hit whose first ``base_first`` coordinates index B and the rest X."""
    if hit is None:
        return None
    labels = [
        module.base.labels[i] if k < base_first else module.carrier.labels[i]
        for k, i in enumerate(hit)
    ]
    return describe(names, labels)


def check_module_laws(module: BModule) -> LawReport:
    """Join preservation in each variable (including empty joins), associativity and unit."""
    report = LawReport(subject=f"module laws of {module.name}")
    a = module.action
    bj, bm = module.base.join_table, module.base.meet_table
    xj = module.carrier.join_table
    nb, nx = a.shape
    bidx = np.arange(nb)

    bad = a[module.base.bottom] != module.carrier.bottom
    report.check("0x = 0", not bad.any(), _witness(module, "x", first_violation(bad), 0))
    bad = a[:, module.carrier.bottom] != module.carrier.bottom
    report.check("b0 = 0", not bad.any(), _witness(module, "b", first_violation(bad), 1))

    bad = a[bj] != xj[a[:, None, :], a[None, :, :]]
    report.check(
        "(a v b)x = ax v bx",
        not bad.any(),
        _witness(module, "abx", first_violation(bad), 2),
    )
    bad = a[:, xj] != xj[a[:, :, None], a[:, None, :]]
    report.check(
        "b(x v y) = bx v by",
        not bad.any(),
        _witness(module, "bxy", first_violation(bad), 1),
    )
    bad = a[bidx[:, None, None], a[None, :, :]] != a[bm]
    report.check(
        "a(bx) = (a ^ b)x",
        not bad.any(),
        _witness(module, "abx", first_violation(bad), 2),
    )
    bad = a[module.base.top] != np.arange(nx)
    report.check("1x = x", not bad.any(), _witness(module, "x", first_violation(bad), 0))
    return report


def check_stability(module: BModule) -> LawReport:
    """Stability bx = b1 ^ x for all b, x."""
    report = LawReport(subject=f"stability of {module.name}")
    b1 = module.unit_image
    expected = module.carrier.meet_table[b1[:, None], np.arange(module.size)[None, :]]
    bad = module.action != expected
    report.check("bx = b1 ^ x", not bad.any(), _witness(module, "bx", first_violation(bad), 1))
    return report


def check_meet_distribution(module: BModule) -> LawReport:
    """b(x ^ y) = bx ^ by; non-empty finite meets reduce to the binary case."""
    report = LawReport(subject=f"meet distribution of {module.name}")
    a = module.action
    xm = module.carrier.meet_table
    bad = a[:, xm] != xm[a[:, :, None], a[:, None, :]]
    report.check(
        "b(meet S) = meet bS for non-empty S",
        not bad.any(),
        _witness(module, "bxy", first_violation(bad), 1),
    )
    return report
