"""Checker for step-by-step equational and structural-induction proofs.

Every step rewrites exactly one subterm by a cited rule.  Without a
position hint the step is accepted only when all matching positions
agree on the result; ambiguity is an error, not a guess.  Two built-in
justifications exist besides database labels: ``cons`` (the terms must
already be structurally equal; it bridges informal list-template
notation) and ``arith`` (the single differing subterm pair must be
ground arithmetic with equal values).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import (
    AmbiguousWithoutPosition,
    ConditionUnmet,
    EvalError,
    NoMatchingPosition,
    NonBooleanOperator,
    TooManyVariables,
    UnknownLabel,
)
from .evaluator import DefEnv, evaluate
from .rewriting import (
    Path,
    RewriteRule,
    RuleDatabase,
    match,
    positions,
    replace_at,
    subterm_at,
)
from .syntax import App, Chain, IntLit, ProofScript, SymLit, Term, Var, print_term, substitute, term_vars
from .values import NIL, T, truthy, value_equal, print_value

_ARITH_OPS = frozenset({"+", "-", "*", "1+", "1-", "zp", "<", "<=", ">", ">=", "="})
_BOOLEAN_OPS = frozenset({"and", "or", "not", "implies", "xor", "nand", "nor"})
_CLOSURE_CAP = 64
_STEP_FUEL = 100_000
T_LIT = SymLit("t")
NIL_LIT = SymLit("nil")


@dataclass(frozen=True)
class StepReport:
    ok: bool
    reason: str = ""
    position: Path | None = None


@dataclass(frozen=True)
class ProofOutcome:
    name: str
    accepted: bool
    case: str | None = None
    step_index: int | None = None
    reason: str = ""

    def to_json(self):
        out = {"name": self.name, "accepted": self.accepted}
        if not self.accepted:
            out["case"] = self.case
            out["step"] = self.step_index
            out["reason"] = self.reason
        return out


def _instantiate(t: Term, bindings: dict[str, Term]) -> Term:
    return substitute(t, bindings)


def _ground(t: Term) -> bool:
    return not term_vars(t)


def _ground_arith(t: Term) -> bool:
    if isinstance(t, IntLit):
        return True
    if isinstance(t, SymLit):
        return t.name in ("t", "nil")
    if isinstance(t, Var):
        return False
    return t.op in _ARITH_OPS and all(_ground_arith(a) for a in t.args)


def _diff_position(a: Term, b: Term) -> Path | None:
    """The unique position where a and b disagree, if they differ in
    exactly one subtree; None when the terms are equal."""
    if a == b:
        return None
    if isinstance(a, App) and isinstance(b, App) and a.op == b.op and len(a.args) == len(b.args):
        diffs = [i for i, (x, y) in enumerate(zip(a.args, b.args)) if x != y]
        if len(diffs) == 1:
            inner = _diff_position(a.args[diffs[0]], b.args[diffs[0]])
            return (diffs[0],) + inner if inner is not None else (diffs[0],)
    return ()


def _condition_holds(cond: Term, hypotheses: frozenset[Term], env: DefEnv) -> bool:
    if cond in hypotheses:
        return True
    if _ground(cond):
        try:
            return truthy(evaluate(cond, {}, env, fuel=_STEP_FUEL))
        except EvalError:
            return False
    return False


def rewrite_step(
    current: Term,
    target: Term,
    rule: RewriteRule,
    reverse: bool = False,
    position: Path | None = None,
    hypotheses: frozenset[Term] = frozenset(),
    env: DefEnv | None = None,
) -> StepReport:
    """Validate one proof step: current rewrites to target by the rule."""
    env = env if env is not None else DefEnv()
    lhs, rhs = rule.oriented(reverse)

    if position is not None:
        sub = subterm_at(current, position)
        if sub is None:
            return StepReport(False, f"position {list(position)} does not exist")
        sigma = match(lhs, sub, rule.rigid)
        if sigma is None:
            raise NoMatchingPosition(
                f"{rule.label} does not match at position {list(position)}"
            )
        if rule.condition is not None and not _condition_holds(
            _instantiate(rule.condition, sigma), hypotheses, env
        ):
            raise ConditionUnmet(
                f"{rule.label} needs {print_term(_instantiate(rule.condition, sigma))}"
            )
        rewritten = replace_at(current, position, _instantiate(rhs, sigma))
        if rewritten != target:
            return StepReport(
                False,
                f"{rule.label} at {list(position)} gives {print_term(rewritten)}, "
                f"not {print_term(target)}",
            )
        return StepReport(True, position=position)

    candidates: list[tuple[Path, Term]] = []
    condition_failures = 0
    for path, sub in positions(current):
        sigma = match(lhs, sub, rule.rigid)
        if sigma is None:
            continue
        if rule.condition is not None and not _condition_holds(
            _instantiate(rule.condition, sigma), hypotheses, env
        ):
            condition_failures += 1
            continue
        candidates.append((path, replace_at(current, path, _instantiate(rhs, sigma))))
    if not candidates:
        if condition_failures:
            raise ConditionUnmet(
                f"{rule.label} matches only where its condition is not established"
            )
        raise NoMatchingPosition(f"{rule.label} matches nowhere in {print_term(current)}")
    results = {rewritten for _, rewritten in candidates}
    if len(results) > 1:
        raise AmbiguousWithoutPosition(
            f"{rule.label} applies at {len(candidates)} positions with different results; "
            "add a position hint"
        )
    path, rewritten = candidates[0]
    if rewritten != target:
        return StepReport(
            False,
            f"{rule.label} gives {print_term(rewritten)}, not {print_term(target)}",
        )
    return StepReport(True, position=path)


def _builtin_step(label: str, current: Term, target: Term, env: DefEnv) -> StepReport:
    if label == "cons":
        if current == target:
            return StepReport(True)
        return StepReport(False, "cons re-expression requires structurally equal terms")
    # arith: the one differing subterm pair must be ground arithmetic
    # with the same value.
    diff = _diff_position(current, target)
    if diff is None:
        return StepReport(True)
    a = subterm_at(current, diff)
    b = subterm_at(target, diff)
    if a is None or b is None or not (_ground_arith(a) and _ground_arith(b)):
        return StepReport(
            False, "arith applies only to one ground numeric subterm rewritten in place"
        )
    try:
        va = evaluate(a, {}, env, fuel=_STEP_FUEL)
        vb = evaluate(b, {}, env, fuel=_STEP_FUEL)
    except EvalError as e:
        return StepReport(False, f"arith evaluation failed: {e.message}")
    if not value_equal(va, vb):
        return StepReport(False, f"arith values differ: {print_value(va)} vs {print_value(vb)}")
    return StepReport(True, position=diff)


def hypothesis_closure(seed: Term | None, db: RuleDatabase, cap: int = _CLOSURE_CAP) -> frozenset[Term]:
    """Terms derivable from the hypothesis by and-splitting and by
    root-rewriting with unconditional rules; bounded breadth-first."""
    if seed is None:
        return frozenset()
    rules = db.unconditional()
    seen: set[Term] = set()
    queue = [seed]
    while queue and len(seen) < cap:
        t = queue.pop(0)
        if t in seen:
            continue
        seen.add(t)
        if isinstance(t, App) and t.op == "and" and len(t.args) == 2:
            queue.extend(t.args)
        for rule in rules:
            sigma = match(rule.lhs, t, rule.rigid)
            if sigma is not None:
                queue.append(_instantiate(rule.rhs, sigma))
    return frozenset(seen)


def _fresh_var(taken: set[str]) -> str:
    i = 0
    while f"x{i}" in taken:
        i += 1
    return f"x{i}"


@dataclass(frozen=True)
class _Case:
    name: str
    start: Term
    end: Term
    hypotheses: frozenset[Term]
    extra_rule: RewriteRule | None


def _check_chain(
    case: _Case, chain: Chain, db: RuleDatabase, env: DefEnv, name: str
) -> ProofOutcome | None:
    if chain.first != case.start:
        return ProofOutcome(
            name, False, case.name, 0,
            f"chain must start at {print_term(case.start)}, "
            f"found {print_term(chain.first)}",
        )
    current = chain.first
    for i, step in enumerate(chain.steps, start=1):
        try:
            if step.label in ("cons", "arith"):
                report = _builtin_step(step.label, current, step.term, env)
            elif case.extra_rule is not None and step.label == case.extra_rule.label:
                report = rewrite_step(
                    current, step.term, case.extra_rule, step.reverse, step.position,
                    case.hypotheses, env,
                )
            else:
                rule = db.resolve(step.label)
                report = rewrite_step(
                    current, step.term, rule, step.reverse, step.position,
                    case.hypotheses, env,
                )
        except UnknownLabel as e:
            return ProofOutcome(name, False, case.name, i, e.message)
        except (NoMatchingPosition, AmbiguousWithoutPosition, ConditionUnmet) as e:
            return ProofOutcome(name, False, case.name, i, e.message)
        if not report.ok:
            return ProofOutcome(name, False, case.name, i, report.reason)
        current = step.term
    if current != case.end:
        return ProofOutcome(
            name, False, case.name, len(chain.steps),
            f"chain ends at {print_term(current)}, expected {print_term(case.end)}",
        )
    return None


def check_proof(script: ProofScript, db: RuleDatabase, env: DefEnv | None = None) -> ProofOutcome:
    """Check a proof; an accepted goal joins the database as a lemma."""
    env = env if env is not None else DefEnv()
    goal_vars = term_vars(script.lhs) | term_vars(script.rhs)
    if script.hypothesis is not None:
        goal_vars |= term_vars(script.hypothesis)

    cases: list[tuple[_Case, Chain]] = []
    if script.method[0] == "equational":
        hyp = hypothesis_closure(script.hypothesis, db)
        cases.append(
            (_Case("chain", script.lhs, script.rhs, hyp, None), script.chains[0])
        )
    else:
        _, scheme, var = script.method
        if scheme == "list":
            fresh = _fresh_var(goal_vars)
            base_subst: dict[str, Term] = {var: NIL_LIT}
            step_subst: dict[str, Term] = {var: App("cons", (Var(fresh), Var(var)))}
        else:
            base_subst = {var: IntLit(0)}
            step_subst = {var: App("1+", (Var(var),))}
        ih = RewriteRule(
            "ind-hyp",
            script.lhs,
            script.rhs,
            script.hypothesis,
            rigid=frozenset({var}),
        )
        for case_name, subst, extra in (
            ("base", base_subst, None),
            ("step", step_subst, ih),
        ):
            start = substitute(script.lhs, subst)
            end = substitute(script.rhs, subst)
            hyp_term = (
                substitute(script.hypothesis, subst)
                if script.hypothesis is not None
                else None
            )
            chain = script.chains[0 if case_name == "base" else 1]
            cases.append(
                (_Case(case_name, start, end, hypothesis_closure(hyp_term, db), extra), chain)
            )

    for case, chain in cases:
        failure = _check_chain(case, chain, db, env, script.name)
        if failure is not None:
            return failure

    db.add_lemma(
        RewriteRule(script.name, script.lhs, script.rhs, script.hypothesis)
    )
    return ProofOutcome(script.name, True)


def derive_truth_table(
    f: Term, env: DefEnv | None = None
) -> list[tuple[dict[str, bool], bool]]:
    """One row per assignment; variables in sorted order, true first."""
    env = env if env is not None else DefEnv()
    _check_boolean(f)
    names = sorted(term_vars(f))
    if len(names) > 20:
        raise TooManyVariables(f"{len(names)} variables exceed the 20-variable limit")
    rows: list[tuple[dict[str, bool], bool]] = []
    for values in product((True, False), repeat=len(names)):
        bindings = {n: (T if v else NIL) for n, v in zip(names, values)}
        result = evaluate(f, bindings, env)
        rows.append((dict(zip(names, values)), result is not NIL))
    return rows


def _check_boolean(f: Term) -> None:
    if isinstance(f, App):
        if f.op not in _BOOLEAN_OPS:
            raise NonBooleanOperator(f"{f.op} is not a boolean connective", f.loc)
        for a in f.args:
            _check_boolean(a)
    elif isinstance(f, IntLit):
        raise NonBooleanOperator("integer literals are not boolean formulas", f.loc)
    elif isinstance(f, SymLit) and f.name not in ("t", "nil"):
        raise NonBooleanOperator(f"{f.name} is not a boolean constant", f.loc)
