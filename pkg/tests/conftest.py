import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from depthlab.complexes import ChainMap, FreeComplex, koszul_complex, twist_complex  # noqa: E402
from depthlab.exactmath import field_from_spec  # noqa: E402
from depthlab.grobner import Matrix, PolyRing  # noqa: E402
from depthlab.rings import PresentedModule, PresentedRing, min_free_resolution  # noqa: E402

QQ = field_from_spec("Q")


def ring(names, rels=(), field=QQ, degrees=None, name=None):
    S = PolyRing(field, list(names), degrees)
    return PresentedRing(S, [S.parse(r) if isinstance(r, str) else r for r in rels], name=name)


def free(R, degrees=(0,)):
    return PresentedModule.free(R, list(degrees))


def cyclic(R, *polys):
    return PresentedModule.quotient(R, [R.S.parse(p) if isinstance(p, str) else p for p in polys])


def restrict(M, R, x):
    """An R/x-module M viewed as an R-module: append x times the identity to its presentation."""
    Mm = M.minimize()
    S = R.S
    g = Mm.ngens
    rows = [[Mm.relations.entry(i, j) for j in range(Mm.relations.ncols)]
            + [S(x) if i == j else S.zero() for j in range(g)] for i in range(g)]
    return PresentedModule.cokernel(R, rows, list(Mm.degrees))


def random_module(R, rng, max_gens=2, max_rels=3):
    """A random graded cokernel with generators in degree 0 and relations of degree 1 or 2."""
    while True:
        g = rng.randint(1, max_gens)
        r = rng.randint(1, max_rels)
        degs = [rng.choice(range(1, 3)) for _ in range(r)]
        rows = [[R.random_form(rng, degs[j]) for j in range(r)] for _ in range(g)]
        M = PresentedModule.cokernel(R, rows, [0] * g)
        if not M.is_zero():
            return M


def form(R, rng, degree):
    """A nonzero random form of the given degree in R."""
    for _ in range(100):
        f = R.random_form(rng, degree)
        if not R.reduce(f).is_zero():
            return f
    raise ValueError(f"R has no nonzero forms of degree {degree}")


def degrees_present(R, candidates=(1, 2)):
    return [d for d in candidates if R.hilbert_function([d])[0]]


def random_free_complex(R, rng):
    """A bounded free complex: a Koszul complex or a truncated resolution."""
    kind = rng.choice(["koszul", "koszul2", "resolution"])
    if kind == "koszul":
        return koszul_complex([form(R, rng, 1)], ring=R)
    if kind == "koszul2":
        return koszul_complex([form(R, rng, 1), form(R, rng, rng.choice(degrees_present(R)))], ring=R)
    return min_free_resolution(random_module(R, rng), 2).as_complex()


def scalar_chain_map(X, r):
    """Multiplication by a form r of degree e as a chain map X(-e) -> X."""
    e = r.degree()
    src = twist_complex(X, -e)
    S = X.ring.S
    return ChainMap(src, X, {i: Matrix.identity(S, X.rank(i)).scale(r) for i in X.degrees_range()})


def koszul_factor_map(R, a, c):
    """K(c a) -> K(a) given by (c, 1), with the twist making it homogeneous."""
    S = R.S
    src = koszul_complex([c * a], ring=R)
    tgt = koszul_complex([a], ring=R)
    return ChainMap(src, tgt, {1: Matrix.from_rows(S, [[c]]), 0: Matrix.identity(S, 1)})


@pytest.fixture
def rng():
    return random.Random(12345)


# --- per-criterion summary lines for the acceptance suite

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    for key, val in report.user_properties:
        if key == "criterion":
            crit = val
    if crit is None:
        return
    num, title = crit
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        ACCEPTANCE[num] = (title, "PASS" if report.outcome == "passed" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, verdict = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {title}")
