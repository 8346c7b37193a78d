"""
Crystal isomorphisms between level-2 Fock space components.

`psi_recursive` walks the crystal graph and is the reference; `psi`
composes shifts, swaps and symbol maps along a plan.
"""
from typing import List, Optional, Tuple

from fockcrystal.core.exceptions import (
    ChargeException, CrystalInvariantException, ValidationException
)
from fockcrystal.core.logging import get_logger
from fockcrystal.domain.models.order import NodeOrder, OrderKind
from fockcrystal.domain.models.partition import Bipartition, Charge, INFINITE_MODULUS
from fockcrystal.domain.models.plan import PsiPlan, PsiStep, StepOp
from fockcrystal.services.crystal import f_tilde, strip_labels, format_modulus
from fockcrystal.services.symbols import upsilon, upsilon_inverse

logger = get_logger("bijections")

STRATEGIES = ("ladder", "base")


def check_compatible(e: int, source: Charge, target: NodeOrder) -> None:
    """Both charges must give the same multiset of residues."""
    if source.residues(e) != target.charge.residues(e):
        raise ChargeException(
            f"charges ({source}) and ({target.charge}) are not congruent mod {format_modulus(e)}",
            details={"source": str(source), "target": str(target)}
        )


def psi_recursive(
    bipartition: Bipartition,
    e: int,
    source: NodeOrder,
    target: NodeOrder,
    strip: str = "smallest",
) -> Bipartition:
    """Unwind good nodes under `source`, replay the reversed labels under `target`."""
    check_compatible(e, source.charge, target)
    labels = strip_labels(bipartition, e, source, strip=strip)
    current = Bipartition.empty()
    for i in reversed(labels):
        following = f_tilde(current, i, e, target)
        if following is None:
            raise CrystalInvariantException(
                f"replay of {bipartition} stalled at {current} on residue {i} under {target}"
            )
        current = following
    return current


# Plans

def _normalize(charge: Charge, e: int) -> List[PsiStep]:
    """Steps taking a charge to one with 0 <= s0 < e and s0 <= s1."""
    steps = []
    if charge.s0 // e:
        steps.append(PsiStep.shift(-(charge.s0 // e)))
        charge = steps[-1].apply_to_charge(charge, e)
    if charge.s1 < charge.s0:
        steps.append(PsiStep.swap())
        charge = steps[-1].apply_to_charge(charge, e)
        if charge.s0 // e:
            steps.append(PsiStep.shift(-(charge.s0 // e)))
    return steps


def _replay(charge: Charge, steps: List[PsiStep], e: int) -> Charge:
    for step in steps:
        charge = step.apply_to_charge(charge, e)
    return charge


def _ladder(charge: Charge, s1: int, e: int) -> List[PsiStep]:
    """Move the second entry to s1 by steps of ±e."""
    if (s1 - charge.s1) % e:
        raise CrystalInvariantException(f"cannot ladder ({charge}) to second entry {s1}")
    count = (s1 - charge.s1) // e
    step = PsiStep.upsilon() if count > 0 else PsiStep.upsilon_inverse()
    return [step] * abs(count)


def _descend_and_swap(charge: Charge, e: int) -> List[PsiStep]:
    """
    From a normalized charge, descend the second entry into [s0, s0 + e)
    and exchange the components, landing on another normalized charge.
    """
    steps = _ladder(charge, charge.s0 + (charge.s1 - charge.s0) % e, e)
    charge = _replay(charge, steps, e)
    steps.append(PsiStep.swap())
    charge = steps[-1].apply_to_charge(charge, e)
    if charge.s0 >= e:
        steps.append(PsiStep.shift(-1))
    return steps


def _inverse(steps: List[PsiStep]) -> List[PsiStep]:
    inverted: List[PsiStep] = []
    for step in reversed(steps):
        if step.op == StepOp.SHIFT:
            inverted.append(PsiStep.shift(-step.t))
        elif step.op == StepOp.SWAP:
            inverted.extend([PsiStep.swap(), PsiStep.shift(-1)])
        elif step.op == StepOp.UPSILON:
            inverted.append(PsiStep.upsilon_inverse())
        elif step.op == StepOp.UPSILON_INVERSE:
            inverted.append(PsiStep.upsilon())
        else:
            raise CrystalInvariantException("stabilization steps cannot be inverted")
    return inverted


def simplify(steps: List[PsiStep]) -> List[PsiStep]:
    """
    Merge adjacent shifts, drop zero shifts, cancel upsilon against its
    inverse and replace two swaps by a shift.
    """
    changed = True
    while changed:
        changed = False
        result: List[PsiStep] = []
        for step in steps:
            if step.op == StepOp.SHIFT and step.t == 0:
                changed = True
                continue
            previous = result[-1] if result else None
            if previous is not None:
                pair = (previous.op, step.op)
                if pair == (StepOp.SHIFT, StepOp.SHIFT):
                    result[-1] = PsiStep.shift(previous.t + step.t)
                    changed = True
                    continue
                if pair in ((StepOp.UPSILON, StepOp.UPSILON_INVERSE), (StepOp.UPSILON_INVERSE, StepOp.UPSILON)):
                    result.pop()
                    changed = True
                    continue
                if pair == (StepOp.SWAP, StepOp.SWAP):
                    result[-1] = PsiStep.shift(1)
                    changed = True
                    continue
            result.append(step)
        steps = result
    return steps


def _to_base(charge: Charge, e: int) -> List[PsiStep]:
    """Steps from any charge to the FLOTW window 0 <= u0 <= u1 < e."""
    steps = _normalize(charge, e)
    charge = _replay(charge, steps, e)
    descent = _ladder(charge, charge.s0 + (charge.s1 - charge.s0) % e, e)
    steps += descent
    charge = _replay(charge, descent, e)
    if charge.s1 >= e:
        steps += [PsiStep.swap(), PsiStep.shift(-1)]
    return steps


def _exact_ladder(source: Charge, target: Charge, e: int) -> List[PsiStep]:
    steps = _normalize(source, e)
    charge = _replay(source, steps, e)
    target_steps = _normalize(target, e)
    normalized_target = _replay(target, target_steps, e)
    if charge.s0 != normalized_target.s0:
        crossing = _descend_and_swap(charge, e)
        steps += crossing
        charge = _replay(charge, crossing, e)
    steps += _ladder(charge, normalized_target.s1, e)
    return steps + _inverse(target_steps)


def _exact_base(source: Charge, target: Charge, e: int) -> List[PsiStep]:
    return _to_base(source, e) + _inverse(_to_base(target, e))


def _asymptotic(source: Charge, target: NodeOrder, e: int, n: int) -> List[PsiStep]:
    """
    Reach a charge past the stabilization threshold for the negative
    asymptotic order; positive targets go through the swapped negative one.
    """
    v0, v1 = target.charge.s0 % e, target.charge.s1 % e
    first = v0 if target.kind == OrderKind.MINUS else v1
    steps = _normalize(source, e)
    charge = _replay(source, steps, e)
    if charge.s0 != first:
        crossing = _descend_and_swap(charge, e)
        steps += crossing
        charge = _replay(charge, crossing, e)
    while charge.s1 - charge.s0 <= n - 1:
        steps.append(PsiStep.upsilon())
        charge = steps[-1].apply_to_charge(charge, e)
    if target.kind == OrderKind.PLUS:
        steps.append(PsiStep.swap())
    steps.append(PsiStep.stabilize(target.kind.value))
    return steps


def plan(
    e: int,
    source: Charge,
    target: NodeOrder,
    n: Optional[int] = None,
    strategy: str = "ladder",
) -> PsiPlan:
    """
    Decompose Ψ from `source` to `target` into atomic steps. Asymptotic
    targets need the rank n, since the stabilization threshold depends on it.
    """
    if e == INFINITE_MODULUS:
        raise ValidationException("plans need a finite modulus")
    if strategy not in STRATEGIES:
        raise ValidationException(f"unknown plan strategy '{strategy}'", details={"choices": list(STRATEGIES)})
    check_compatible(e, source, target)
    if target.is_asymptotic:
        if n is None or n < 0:
            raise ValidationException("asymptotic targets need a non-negative rank n")
        steps = _asymptotic(source, target, e, n)
    elif strategy == "ladder":
        steps = _exact_ladder(source, target.charge, e)
    else:
        steps = _exact_base(source, target.charge, e)
    result = PsiPlan(e=e, source=source, target=target, n=n, steps=simplify(steps))
    logger.debug("Planned bijection", extra={"plan": [str(step) for step in result.steps]})
    return result


def plan_is_sound(psi_plan: PsiPlan) -> bool:
    """Replaying the step charges ends on the target, or past its threshold."""
    trail = psi_plan.charges()
    final = trail[-1]
    e = psi_plan.e
    for before, step in zip(trail, psi_plan.steps):
        if step.op == StepOp.UPSILON and not 0 <= before.s0 <= before.s1:
            return False
        if step.op == StepOp.UPSILON_INVERSE and not 0 <= before.s0 <= before.s1 - e:
            return False
    if not psi_plan.target.is_asymptotic:
        return final == psi_plan.target.charge
    v = psi_plan.target.charge
    if (final.s0 - v.s0) % e or (final.s1 - v.s1) % e:
        return False
    n = psi_plan.n
    if psi_plan.target.kind == OrderKind.MINUS:
        return final.s1 - final.s0 > n - 1
    return final.s0 - final.s1 > n - 1 - e


def apply_step(bipartition: Bipartition, charge: Charge, step: PsiStep, e: int) -> Tuple[Bipartition, Charge]:
    if step.op == StepOp.SWAP:
        bipartition = bipartition.swapped()
    elif step.op == StepOp.UPSILON:
        bipartition = upsilon(bipartition, charge)
    elif step.op == StepOp.UPSILON_INVERSE:
        bipartition = upsilon_inverse(bipartition, step.apply_to_charge(charge, e))
    return bipartition, step.apply_to_charge(charge, e)


def run_plan(bipartition: Bipartition, psi_plan: PsiPlan) -> Bipartition:
    charge = psi_plan.source
    for step in psi_plan.steps:
        bipartition, charge = apply_step(bipartition, charge, step, psi_plan.e)
    return bipartition


def psi(
    bipartition: Bipartition,
    e: int,
    source: Charge,
    target: NodeOrder,
    strategy: str = "ladder",
) -> Bipartition:
    """Ψ from Φ^source to the target crystal, executed along a plan."""
    psi_plan = plan(e, source, target, n=bipartition.rank, strategy=strategy)
    # membership is checked up front so that a symbol failure never masks it
    strip_labels(bipartition, e, NodeOrder(charge=source))
    return run_plan(bipartition, psi_plan)
