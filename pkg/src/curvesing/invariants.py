"""Invariants of a plane curve germ and the identity suite relating them.

:func:`full_record` computes everything for one polynomial and evaluates
eight checks:

==== ==========================================================
C1   mu = 2*delta - r + 1, with delta from the branch expansion
C2   tau >= delta + m - r
C3   mu/2 < tau <= mu (singular germs)
C4   1 <= rho < 2 (singular germs)
C5   dim of forms modulo holomorphic forms = tau - delta (one branch)
C6   that dimension equals delta - r + 1 exactly when mu = tau (one branch)
C7   multiplication by f on the Milnor algebra: kernel tau, image mu - tau
C8   mu >= lambda >= delta + m - r, with lambda = tau
==== ==========================================================

In the record delta itself is ``(mu + r - 1)/2``; the branch-expansion value
is used only by C1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import InputError, InternalInvariantError, NonIsolatedError
from .exactnum import render_rational
from .finitealg import principal_ideal_dim, quotient_algebra
from .localstd import INFINITE, StandardBasis, colength, standard_basis
from .numberfield import TowerLimitError
from .omega import omega_codim
from .polyring import Polynomial, VariableSet, jacobian_minors, order_of
from .puiseux import delta_oracle, puiseux_branches
from .series import InsufficientPrecision

__all__ = [
    "Check",
    "InvariantRecord",
    "milnor",
    "tjurina",
    "tjurina_prime",
    "full_record",
    "record_to_json",
    "space_curve_record",
    "CHECK_NAMES",
]

CHECK_NAMES = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8")

PASS, FAIL, NA, ERROR = "pass", "fail", "n/a", "error"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str

    @property
    def ok(self) -> bool:
        return self.status in (PASS, NA)


@dataclass(frozen=True)
class InvariantRecord:
    input: str
    mu: int
    tau: int
    tau_prime: int | None
    m: int | None
    r: int | None
    delta: int | None
    lam: int
    rho: mpq | None
    omega_codim: int | None
    quasihomogeneous: bool
    checks: tuple = field(default_factory=tuple)
    complete: bool = True

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    @property
    def passed(self) -> bool:
        return self.complete and not self.failures


def _plane(f: Polynomial) -> None:
    if f.nvars != 2:
        raise InputError("a plane curve germ needs exactly two variables")
    if f.is_zero():
        raise InputError("the zero polynomial does not define a curve")
    if f.constant_term():
        raise InputError("f does not vanish at the origin")


def _colength(gens, message: str) -> tuple[int, StandardBasis]:
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise NonIsolatedError(message)
    SB = standard_basis(gens)
    c = colength(SB)
    if c == INFINITE:
        raise NonIsolatedError(message)
    return c, SB


def _jacobian(f: Polynomial) -> list:
    return [f.diff(v) for v in f.vars.names]


def milnor(f: Polynomial) -> int:
    """``dim O/J_f``; raises :class:`NonIsolatedError` when infinite."""
    _plane(f)
    return _colength(_jacobian(f), "non-isolated singularity")[0]


def tjurina(f: Polynomial) -> int:
    """``dim O/(f, J_f)``."""
    _plane(f)
    return _colength([f] + _jacobian(f), "non-isolated singularity")[0]


def tjurina_prime(gens, variables=None) -> int:
    """Colength of ``I`` plus the maximal minors of its Jacobian matrix.

    ``gens`` must define a complete intersection curve: one fewer generator
    than variables, all vanishing at the origin.
    """
    gens = list(gens)
    if not gens:
        raise InputError("no generators given")
    vs = VariableSet.of(variables) if variables is not None else gens[0].vars
    if any(g.vars != vs for g in gens):
        raise InputError("generators use a different variable set")
    if len(gens) != len(vs) - 1:
        raise InputError(f"a complete intersection curve in {len(vs)} variables "
                         f"needs {len(vs) - 1} generators, got {len(gens)}")
    if any(g.is_zero() or g.constant_term() for g in gens):
        raise InputError("every generator must vanish at the origin (and be nonzero)")
    minors = jacobian_minors(gens, vs)
    return _colength(gens + minors, "non-isolated or non-reduced")[0]


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def full_record(f: Polynomial, label: str | None = None) -> InvariantRecord:
    """All invariants of the plane germ ``f = 0`` and checks C1 to C8.

    Raises :class:`NonIsolatedError` when the Milnor number is infinite.
    Failures inside the branch computations give a record with
    ``complete=False`` and the affected fields set to None.
    """
    _plane(f)
    label = label if label is not None else str(f)
    mu, SBJ = _colength(_jacobian(f), "non-isolated singularity")
    tau, _ = _colength([f] + _jacobian(f), "non-isolated singularity")
    tau_prime = tjurina_prime([f])
    m = order_of(f)
    lam = tau
    smooth = mu == 0
    rho = None if smooth else mpq(mu, tau)
    checks: dict = {}
    complete = True

    r = delta = delta_or = om = None
    try:
        B = puiseux_branches(f)
        r = B.r
        if (mu + r - 1) % 2:
            raise InternalInvariantError(f"mu + r - 1 = {mu + r - 1} is odd; branch count is wrong")
        delta = (mu + r - 1) // 2
        delta_or = delta_oracle(B)
        if r == 1:
            om = omega_codim(B[0])
    except (TowerLimitError, InsufficientPrecision) as exc:
        complete = False
        reason = f"branch computation failed: {exc}"
        for name in ("C1", "C2", "C5", "C6", "C8"):
            checks[name] = Check(name, ERROR, reason)

    if delta_or is not None:
        checks["C1"] = Check("C1", _status(mu == 2 * delta_or - r + 1),
                             f"mu={mu}, 2*{delta_or} - {r} + 1 = {2 * delta_or - r + 1}")
    if delta is not None:
        bound = delta + m - r
        checks["C2"] = Check("C2", _status(tau >= bound), f"tau={tau} >= delta+m-r={bound}")
        checks["C8"] = Check("C8", _status(mu >= lam >= bound),
                             f"mu={mu} >= lambda={lam} >= delta+m-r={bound}")
        if r == 1 and om is None:
            pass
        elif r == 1:
            checks["C5"] = Check("C5", _status(om == tau - delta),
                                 f"dim={om}, tau-delta={tau - delta}")
            eq = om == delta - r + 1
            checks["C6"] = Check("C6", _status(eq == (mu == tau)),
                                 f"dim={om} {'=' if eq else '!='} delta-r+1={delta - r + 1}, "
                                 f"mu {'=' if mu == tau else '!='} tau")
        else:
            for name in ("C5", "C6"):
                checks[name] = Check(name, NA, f"germ has {r} branches")

    if smooth:
        checks["C3"] = Check("C3", NA, "smooth germ")
        checks["C4"] = Check("C4", NA, "smooth germ")
    else:
        checks["C3"] = Check("C3", _status(2 * tau > mu and tau <= mu),
                             f"mu/2={render_rational(mpq(mu, 2))} < tau={tau} <= mu={mu}")
        checks["C4"] = Check("C4", _status(1 <= rho < 2), f"rho={render_rational(rho)}")

    A = quotient_algebra(SBJ)
    img = principal_ideal_dim(f, A)
    ker = A.dim - img
    checks["C7"] = Check("C7", _status(ker == tau and img == mu - tau),
                         f"dim ker={ker} (tau={tau}), dim image={img} (mu-tau={mu - tau})")

    return InvariantRecord(
        input=label,
        mu=mu,
        tau=tau,
        tau_prime=tau_prime,
        m=m,
        r=r,
        delta=delta,
        lam=lam,
        rho=rho,
        omega_codim=om,
        quasihomogeneous=mu == tau,
        checks=tuple(checks[n] for n in CHECK_NAMES),
        complete=complete,
    )


def record_to_json(rec: InvariantRecord) -> dict:
    return {
        "input": rec.input,
        "mu": rec.mu,
        "tau": rec.tau,
        "tau_prime": rec.tau_prime,
        "m": rec.m,
        "r": rec.r,
        "delta": rec.delta,
        "lambda": rec.lam,
        "rho": None if rec.rho is None else {"num": int(rec.rho.numerator),
                                             "den": int(rec.rho.denominator)},
        "omega_codim": rec.omega_codim,
        "quasihomogeneous": rec.quasihomogeneous,
        "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in rec.checks],
        "complete": rec.complete,
    }


def space_curve_record(gens, variables=None, label: str | None = None) -> dict:
    """JSON-ready record for a complete intersection space curve: only tau'."""
    gens = list(gens)
    tp = tjurina_prime(gens, variables)
    return {
        "input": label if label is not None else "; ".join(str(g) for g in gens),
        "tau_prime": tp,
        "complete": True,
    }
