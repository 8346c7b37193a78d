"""
Property suites run over desk-scale grids by `fockcrystal verify`.

Every suite returns a SuiteReport; a failing check is recorded, never
raised. Only an exhausted budget aborts a run.
"""
import random
import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from math import comb, gcd
from typing import Callable, Dict, Iterable, List, Tuple

from fockcrystal.core.exceptions import (
    AppBaseException, BudgetExceededException, HeckeParameterException
)
from fockcrystal.core.logging import get_logger
from fockcrystal.core.metrics import BIPARTITION_VISITS, VERIFICATION_CHECKS
from fockcrystal.domain.models.order import NodeOrder
from fockcrystal.domain.models.partition import Bipartition, Charge, INFINITE_MODULUS
from fockcrystal.domain.models.verification import SuiteReport, VerificationGrid, VerificationReport
from fockcrystal.services.bijections import plan, plan_is_sound, psi, psi_recursive
from fockcrystal.services.canonical_basis import degree_max_term, is_sl_infinity_member, pair_orbit
from fockcrystal.services.combinatorics import bipartitions_of
from fockcrystal.services.crystal import (
    enumerate_uglov, is_flotw, is_in_crystal, sorted_bipartitions, stable_modulus
)
from fockcrystal.services.hecke_params import basic_set_charge
from fockcrystal.services.symbols import canonical_m, to_symbol, upsilon, upsilon_inverse

logger = get_logger("verification")

MAX_RECORDED_FAILURES = 20


class Budget:
    """Thread-safe count of bipartition visits against a ceiling."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0
        self._lock = threading.Lock()

    def visit(self, count: int = 1) -> None:
        with self._lock:
            self.used += count
            if self.used > self.limit:
                raise BudgetExceededException(self.limit, details={"used": self.used})
        BIPARTITION_VISITS.inc(count)


class Tally:
    """Per-cell outcome, merged into a SuiteReport."""

    def __init__(self):
        self.checks = 0
        self.failed = 0
        self.visits = 0
        self.failures: List[str] = []
        self.counters: Counter = Counter()

    def check(self, condition: bool, failure: str) -> None:
        self.checks += 1
        if not condition:
            self.failed += 1
            self.failures.append(failure)

    def visit(self, budget: Budget, count: int) -> None:
        budget.visit(count)
        self.visits += count


def _finite(grid: VerificationGrid) -> List[int]:
    return [e for e in grid.e_values if e != INFINITE_MODULUS and e >= 2]


def _window_charges(e: int) -> Iterable[Tuple[int, int]]:
    return ((s0, s1) for s1 in range(e) for s0 in range(s1 + 1))


def _run_cells(
    name: str,
    cells: List[tuple],
    check_cell: Callable[..., Tally],
    grid: VerificationGrid,
    budget: Budget,
) -> SuiteReport:
    report = SuiteReport(suite=name)
    counters: Counter = Counter()

    def guarded(cell: tuple) -> Tally:
        tally = Tally()
        try:
            return check_cell(tally, budget, *cell)
        except BudgetExceededException:
            raise
        except AppBaseException as exc:
            tally.check(False, f"{cell}: {exc.message}")
            return tally

    with ThreadPoolExecutor(max_workers=grid.workers) as pool:
        tallies = list(pool.map(guarded, cells))

    for tally in tallies:
        report.checks += tally.checks
        report.failed += tally.failed
        report.visits += tally.visits
        counters.update(tally.counters)
        room = MAX_RECORDED_FAILURES - len(report.failures)
        report.failures.extend(tally.failures[:max(room, 0)])
    report.passed = report.checks - report.failed
    report.notes.extend(f"{key}: {value}" for key, value in sorted(counters.items()))

    VERIFICATION_CHECKS.labels(suite=name, outcome="passed").inc(report.passed)
    VERIFICATION_CHECKS.labels(suite=name, outcome="failed").inc(report.failed)
    logger.info(report.summary(), extra={"suite": name, "cells": len(cells)})
    return report


# main: upsilon against the recursive crystal map

def _main_cell(tally: Tally, budget: Budget, e: int, s0: int, s1: int, n: int) -> Tally:
    source, target = NodeOrder.uglov(s0, s1), NodeOrder.uglov(s0, s1 + e)
    charge = Charge(s0=s0, s1=s1)
    level = enumerate_uglov(e, source, n)
    tally.visit(budget, len(level))
    images = set()
    for bipartition in sorted_bipartitions(level):
        tally.check(to_symbol(bipartition, charge).is_standard(), f"{bipartition} at ({charge}) e={e}: symbol not standard")
        image = upsilon(bipartition, charge)
        expected = psi_recursive(bipartition, e, source, target)
        tally.check(image == expected, f"{bipartition} at ({charge}) e={e}: upsilon gives {image}, crystal gives {expected}")
        images.add(image)
    tally.check(
        images == set(enumerate_uglov(e, target, n)),
        f"e={e} ({charge}) n={n}: upsilon image differs from Φ at ({s0},{s1 + e})"
    )
    return tally


def suite_main(grid: VerificationGrid, budget: Budget) -> SuiteReport:
    cells = [(e, s0, s1, n) for e in _finite(grid) for s0, s1 in _window_charges(e) for n in grid.n_values]
    return _run_cells("main", cells, _main_cell, grid, budget)


# flotw: recursive enumeration against the closed-form test

def _flotw_cell(tally: Tally, budget: Budget, e: int, s0: int, s1: int, n: int) -> Tally:
    charge = Charge(s0=s0, s1=s1)
    recursive = enumerate_uglov(e, NodeOrder(charge=charge), n)
    candidates = list(bipartitions_of(n))
    tally.visit(budget, len(recursive) + len(candidates))
    filtered = {b for b in candidates if is_flotw(b, e, charge)}
    missing, extra = filtered - recursive, recursive - filtered
    tally.check(
        not missing and not extra,
        f"e={e} ({charge}) n={n}: {len(missing)} FLOTW-only, {len(extra)} crystal-only"
    )
    return tally


def suite_flotw(grid: VerificationGrid, budget: Budget) -> SuiteReport:
    cells = [(e, s0, s1, n) for e in _finite(grid) for s0, s1 in _window_charges(e) for n in grid.n_values]
    return _run_cells("flotw", cells, _flotw_cell, grid, budget)


# stabilize: Uglov sets past the thresholds against Kleshchev sets

def _stabilize_cell(tally: Tally, budget: Budget, e: int, n: int) -> Tally:
    for s0 in range(e):
        for gap in (n, n + 1):
            s1 = s0 + gap
            uglov = enumerate_uglov(e, NodeOrder.uglov(s0, s1), n)
            minus = enumerate_uglov(e, NodeOrder.minus(s0 % e, s1 % e), n)
            plus = enumerate_uglov(e, NodeOrder.plus(s0 % e, s1 % e), n)
            tally.visit(budget, len(uglov) + len(minus) + len(plus))
            tally.check(uglov == minus, f"e={e} n={n} ({s0},{s1}): Uglov set differs from the negative Kleshchev set")
            tally.counters["s1-s0 > n-1 matches negative"] += uglov == minus
            tally.counters["s1-s0 > n-1 matches positive"] += uglov == plus
            tally.counters["s1-s0 > n-1 cells"] += 1
    for s1 in range(e):
        for extra in (0, 1):
            s0 = s1 + n - e + extra
            uglov = enumerate_uglov(e, NodeOrder.uglov(s0, s1), n)
            plus = enumerate_uglov(e, NodeOrder.plus(s0 % e, s1 % e), n)
            tally.visit(budget, len(uglov) + len(plus))
            tally.check(uglov == plus, f"e={e} n={n} ({s0},{s1}): Uglov set differs from the positive Kleshchev set")
    return tally


def suite_stabilize(grid: VerificationGrid, budget: Budget) -> SuiteReport:
    cells = [(e, n) for e in _finite(grid) for n in grid.n_values]
    return _run_cells("stabilize", cells, _stabilize_cell, grid, budget)


# degree-max: the top term of the canonical basis element is upsilon

def _degree_max_cell(tally: Tally, budget: Budget, e: int, s0: int, s1: int, n: int) -> Tally:
    charge = Charge(s0=s0, s1=s1)
    level = enumerate_uglov(e, NodeOrder(charge=charge), n)
    tally.visit(budget, len(level))
    for bipartition in sorted_bipartitions(level):
        element = pair_orbit(bipartition, charge)
        p = element.max_degree
        degrees = Counter(term.degree for term in element.terms)
        tally.check(
            all(degrees[k] == comb(p, k) for k in range(p + 1)),
            f"{bipartition} at ({charge}): degree distribution {dict(degrees)} is not binomial"
        )
        top = degree_max_term(bipartition, charge)
        image = upsilon(bipartition, charge)
        tally.check(top == image, f"{bipartition} at ({charge}): top term {top}, upsilon {image}")
        tally.counters["pair-subset terms"] += len(element.terms)
        tally.counters["pair-subset terms in sl_infinity crystal"] += sum(
            is_sl_infinity_member(term.bipartition, charge) for term in element.terms
        )
    return tally


def suite_degree_max(grid: VerificationGrid, budget: Budget) -> SuiteReport:
    cells = [(e, s0, s1, n) for e in _finite(grid) for s0, s1 in _window_charges(e) for n in grid.n_values]
    return _run_cells("degree-max", cells, _degree_max_cell, grid, budget)


# bijection: composed maps against the oracle, images and cardinalities

def _bijection_cell(tally: Tally, budget: Budget, e: int, source: Charge, target: Charge, n: int) -> Tally:
    source_order, target_order = NodeOrder(charge=source), NodeOrder(charge=target)
    domain = enumerate_uglov(e, source_order, n)
    codomain = enumerate_uglov(e, target_order, n)
    tally.visit(budget, len(domain) + len(codomain))
    tally.check(len(domain) == len(codomain), f"e={e} n={n}: |Φ({source})|={len(domain)} but |Φ({target})|={len(codomain)}")
    for strategy in ("ladder", "base"):
        tally.check(
            plan_is_sound(plan(e, source, target_order, n=n, strategy=strategy)),
            f"e={e}: {strategy} plan ({source}) -> ({target}) is unsound"
        )
    images = set()
    for bipartition in sorted_bipartitions(domain):
        image = psi(bipartition, e, source, target_order)
        expected = psi_recursive(bipartition, e, source_order, target_order)
        tally.check(image == expected, f"e={e} ({source}) -> ({target}): {bipartition} maps to {image}, crystal gives {expected}")
        other = psi(bipartition, e, source, target_order, strategy="base")
        tally.check(other == image, f"e={e} ({source}) -> ({target}): strategies disagree on {bipartition}")
        images.add(image)
    tally.check(images == set(codomain), f"e={e} n={n}: image of Φ({source}) is not Φ({target})")
    return tally


def _kleshchev_swap_cell(tally: Tally, budget: Budget, e: int, v0: int, v1: int, n: int) -> Tally:
    source, target = NodeOrder.plus(v0, v1), NodeOrder.minus(v1, v0)
    level = enumerate_uglov(e, source, n)
    tally.visit(budget, len(level))
    for bipartition in sorted_bipartitions(level):
        image = psi_recursive(bipartition, e, source, target)
        tally.check(image == bipartition.swapped(), f"e={e} ({v0},{v1}): {bipartition} maps to {image}, not its swap")
    return tally


def suite_bijection(grid: VerificationGrid, budget: Budget) -> SuiteReport:
    cells = []
    for e in _finite(grid):
        values = grid.charges_for(e)
        charges = [Charge(s0=s0, s1=s1) for s0 in values for s1 in values]
        for source in charges:
            for target in charges:
                if source.residues(e) == target.residues(e):
                    cells.extend((e, source, target, n) for n in grid.n_values)
    report = _run_cells("bijection", cells, _bijection_cell, grid, budget)
    swaps = [(e, v0, v1, n) for e in _finite(grid) for v0 in range(e) for v1 in range(e) for n in grid.n_values]
    swap_report = _run_cells("bijection", swaps, _kleshchev_swap_cell, grid, budget)
    return _merge("bijection", [report, swap_report])


def _merge(name: str, reports: List[SuiteReport]) -> SuiteReport:
    merged = SuiteReport(suite=name)
    for report in reports:
        merged.checks += report.checks
        merged.passed += report.passed
        merged.failed += report.failed
        merged.visits += report.visits
        merged.failures.extend(report.failures)
        merged.notes.extend(report.notes)
    merged.failures = merged.failures[:MAX_RECORDED_FAILURES]
    return merged


# inverse: m-independence and the inverse laws on seeded random samples

def _inverse_sample(tally: Tally, budget: Budget, e: int, s0: int, s1: int, bipartition: Bipartition, extra_m: int) -> Tally:
    charge = Charge(s0=s0, s1=s1)
    tally.visit(budget, 1)
    image = upsilon(bipartition, charge)
    larger = upsilon(bipartition, charge, m=canonical_m(bipartition, charge) + extra_m)
    tally.check(image == larger, f"{bipartition} at ({charge}): upsilon depends on m")
    tally.check(upsilon_inverse(image, charge) == bipartition, f"{bipartition} at ({charge}): inverse does not undo upsilon")
    tally.check(upsilon(upsilon_inverse(image, charge), charge) == image, f"{image} at ({charge}): upsilon does not undo the inverse")
    return tally


def suite_inverse(grid: VerificationGrid, budget: Budget) -> SuiteReport:
    rng = random.Random(grid.seed)
    pools = []
    for e in _finite(grid):
        for s0, s1 in _window_charges(e):
            for n in grid.n_values:
                level = sorted_bipartitions(enumerate_uglov(e, NodeOrder.uglov(s0, s1), n))
                pools.append((e, s0, s1, level))
    samples = []
    for _ in range(grid.samples if pools else 0):
        e, s0, s1, level = rng.choice(pools)
        samples.append((e, s0, s1, rng.choice(level), rng.randint(1, 3)))
    return _run_cells("inverse", samples, _inverse_sample, grid, budget)


# hecke: exhaustive modular check of the parameter arithmetic

def _hecke_cell(tally: Tally, budget: Budget, l: int) -> Tally:
    for a in range(1, l + 1):
        for b in range(1, l + 1):
            try:
                params = basic_set_charge(a, b, l)
            except HeckeParameterException as exc:
                g = gcd(a, l)
                least = next((d for d in range(l) if (a * d - b + l // 2) % l == 0), None)
                expected = {
                    "order_one": g == l,
                    "unsolvable_d": (b - l // 2) % g != 0,
                    "lattice_point": least is not None and (b - a * least) % (a * (l // g)) == 0,
                }.get(exc.reason, False)
                tally.check(expected, f"a={a} b={b} l={l}: unexpected diagnostic {exc.reason}")
                tally.counters[f"diagnostic {exc.reason}"] += 1
                continue
            e, d, p = params.e, params.d, params.p
            tally.check((b - a * d - l // 2) % l == 0, f"a={a} b={b} l={l}: d={d} violates the congruence")
            tally.check(
                (a * e) % l == 0 and all((a * k) % l for k in range(1, e)),
                f"a={a} b={b} l={l}: e={e} is not the order of ζ^a"
            )
            tally.check(a * (d + p * e) < b < a * (d + (p + 1) * e), f"a={a} b={b} l={l}: p={p} violates the bounds")
            tally.check(params.charge == Charge(s0=d + p * e, s1=0), f"a={a} b={b} l={l}: charge {params.charge}")
    return tally


def suite_hecke(grid: VerificationGrid, budget: Budget) -> SuiteReport:
    cells = [(l,) for l in range(2, 25, 2)]
    return _run_cells("hecke", cells, _hecke_cell, grid, budget)


# sl-infinity: closed form of the e = ∞ crystal and stability in e

def _sl_infinity_cell(tally: Tally, budget: Budget, s0: int, s1: int, n: int) -> Tally:
    charge = Charge(s0=s0, s1=s1)
    recursive = enumerate_uglov(INFINITE_MODULUS, NodeOrder(charge=charge), n)
    candidates = list(bipartitions_of(n))
    tally.visit(budget, len(recursive) + len(candidates))
    closed = {b for b in candidates if is_sl_infinity_member(b, charge)}
    tally.check(closed == set(recursive), f"e=inf ({charge}) n={n}: closed form differs from the crystal")
    return tally


def _stability_cell(tally: Tally, budget: Budget, e: int, s0: int, s1: int, n: int) -> Tally:
    charge = Charge(s0=s0, s1=s1)
    f = stable_modulus(charge, n)
    level = enumerate_uglov(e, NodeOrder(charge=charge), n)
    tally.visit(budget, len(level))
    for bipartition in sorted_bipartitions(level):
        tally.check(is_in_crystal(bipartition, f, NodeOrder(charge=charge)),
                    f"{bipartition} at ({charge}): in Φ for e={e} but not for e={f}")
        tally.check(is_sl_infinity_member(bipartition, charge), f"{bipartition} at ({charge}): dominance fails")
    return tally


def suite_sl_infinity(grid: VerificationGrid, budget: Budget) -> SuiteReport:
    values = grid.charge_values if grid.charge_values is not None else [0, 1, 2]
    cells = [(s0, s1, n) for s0 in values for s1 in values if s0 <= s1 for n in grid.n_values]
    closed = _run_cells("sl-infinity", cells, _sl_infinity_cell, grid, budget)
    stable_cells = [(e, s0, s1, n) for e in _finite(grid) for s0, s1 in _window_charges(e) for n in grid.n_values]
    stable = _run_cells("sl-infinity", stable_cells, _stability_cell, grid, budget)
    return _merge("sl-infinity", [closed, stable])


SUITES: Dict[str, Callable[[VerificationGrid, Budget], SuiteReport]] = {
    "main": suite_main,
    "flotw": suite_flotw,
    "stabilize": suite_stabilize,
    "degree-max": suite_degree_max,
    "bijection": suite_bijection,
    "inverse": suite_inverse,
    "hecke": suite_hecke,
    "sl-infinity": suite_sl_infinity,
}


def run_verification(suite: str, grid: VerificationGrid) -> VerificationReport:
    """Run one suite, or every suite for `all`, sharing one budget."""
    budget = Budget(grid.budget)
    names = list(SUITES) if suite == "all" else [suite]
    report = VerificationReport()
    for name in names:
        report.suites.append(SUITES[name](grid, budget))
    return report

