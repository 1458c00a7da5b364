"""Automaton engine: one-step semantics, bounded search, and the file
format."""

import pytest
from hypothesis import given, settings, strategies as hst

from itpda import machine as mc
from itpda import store as st
from itpda.builders import Variant, fibonacci_automaton
from itpda.machine import (ACCEPTED, INCONCLUSIVE, REJECTED, Automaton,
                           Configuration, Pop, Push, SearchBounds, Transition)


def T(state, letter, pattern, target, action):
    return Transition(state, letter, tuple(pattern), target, action)


@pytest.fixture(scope="module")
def fib():
    return fibonacci_automaton()


# --- step ------------------------------------------------------------------------

def test_step_initial_branches(fib):
    start = fib.initial_configuration()
    got = mc.step(fib, start, "aaa")
    stores = {st.render(c.store) for c, _ in got}
    assert stores == {"Z[F]", "X2"}
    assert all(c.position == 0 for c, _ in got)


def test_step_no_match_is_empty(fib):
    cfg = Configuration("q1", 0, fib.initial_store())  # no q1 Z transition
    assert mc.step(fib, cfg, "a") == set()


def test_step_read_advances_position(fib):
    cfg = Configuration("q0", 0, st.single("X1", 2))
    got = mc.step(fib, cfg, "a")
    assert {(c.state, c.position, st.render(c.store)) for c, _ in got} \
        == {("q0", 1, "e")}


def test_step_exact_pattern_match():
    # A pattern "Z" must not fire on topsym ZF, and vice versa.
    a = Automaton(
        levels=2, states=("q",), initial_state="q",
        input_alphabet=("x", "y"), store_alphabet=("Z", "F"),
        initial_symbol="Z",
        transitions=(
            T("q", "x", ("Z",), "q", Pop(1)),
            T("q", "y", ("Z", "F"), "q", Pop(2)),
        ))
    bare = Configuration("q", 0, st.single("Z", 2))
    flagged = Configuration("q", 0, st.single("Z", 2, ["F"]))
    assert {tid for _, tid in mc.step(a, bare, "x")} == {0}
    assert mc.step(a, bare, "y") == set()
    assert {tid for _, tid in mc.step(a, flagged, "y")} == {1}
    assert mc.step(a, flagged, "x") == set()


# --- accepts -----------------------------------------------------------------------

def test_accepts_fibonacci_lengths(fib):
    assert mc.accepts(fib, "a" * 8)
    assert mc.accepts(fib, "a" * 8).status == ACCEPTED
    assert mc.accepts(fib, "a" * 4).status == REJECTED


def test_accepts_empty_word_nonempty_store_rejected():
    a = Automaton(levels=1, states=("q",), initial_state="q",
                  input_alphabet=("x",), store_alphabet=("Z",),
                  initial_symbol="Z",
                  transitions=(T("q", "x", ("Z",), "q", Pop(1)),))
    assert mc.accepts(a, "").status == REJECTED
    assert mc.accepts(a, "x").status == ACCEPTED


def test_accepts_rejects_undeclared_letters(fib):
    with pytest.raises(mc.UndeclaredLetterError):
        mc.accepts(fib, "ab")


def test_inconclusive_when_budget_too_small(fib):
    v = mc.accepts(fib, "a" * 8, SearchBounds(100, 5))
    assert v.status == INCONCLUSIVE


def test_store_cut_flagged_but_still_rejected(fib):
    v = mc.accepts(fib, "a" * 4)
    assert v.status == REJECTED
    assert v.store_cut  # the guess loop was pruned by the store bound


def test_verdict_bool(fib):
    assert bool(mc.accepts(fib, "a"))
    assert not mc.accepts(fib, "aaaa")


# --- traces --------------------------------------------------------------------------

def test_trace_replays_under_step(fib):
    word = "a" * 13
    v = mc.accepts(fib, word, trace=True)
    assert v.status == ACCEPTED
    trace = v.trace
    first, _ = trace[0]
    assert first == fib.initial_configuration()
    last, last_tid = trace[-1]
    assert last_tid is None
    assert last.position == len(word) and last.store.size == 0
    for (cfg, tid), (nxt, _) in zip(trace, trace[1:]):
        assert (nxt, tid) in mc.step(fib, cfg, word)


def test_trace_absent_unless_requested(fib):
    assert mc.accepts(fib, "aaa").trace is None


# --- determinism, memoization, monotonicity ----------------------------------------------

@settings(deadline=None, max_examples=30)
@given(hst.integers(0, 40))
def test_memoization_equivalence(n):
    fib = fibonacci_automaton()
    word = "a" * n
    assert (mc.accepts(fib, word, memoize=True).status
            == mc.accepts(fib, word, memoize=False).status)


@settings(deadline=None, max_examples=30)
@given(hst.integers(0, 40), hst.integers(1, 3))
def test_bounds_monotonicity(n, factor):
    # Acceptance is final, and so is a rejection whose search was never
    # pruned by the store bound; a store-cut rejection may flip to
    # Accepted once the bound admits the (longer) accepting run.
    fib = fibonacci_automaton()
    word = "a" * n
    small = mc.accepts(fib, word, SearchBounds(20, 2000))
    big = mc.accepts(fib, word,
                     SearchBounds(20 * factor + 20, 2000 * factor + 50000))
    if small.status == ACCEPTED:
        assert big.status == ACCEPTED
    elif small.status == REJECTED and not small.store_cut:
        assert big.status == REJECTED


# --- reachable -----------------------------------------------------------------------------

def test_reachable_goal_equals_start(fib):
    cfg = Configuration("q0", 0, st.single("X1", 2))
    assert mc.reachable(fib, cfg, cfg, "").status == ACCEPTED


def test_reachable_lemma_instance_k3(fib):
    # From X2 flagged with 3 height markers, reading a^{f_3} empties the store.
    start = Configuration("q0", 0, st.single("X2", 2, ["F"] * 3))
    goal = Configuration("q0", 3, st.empty(2))
    assert mc.reachable(fib, start, goal, "aaa").status == ACCEPTED
    wrong = Configuration("q0", 2, st.empty(2))
    assert mc.reachable(fib, start, wrong, "aa").status == REJECTED


# --- enumerate_language ------------------------------------------------------------------------

def test_enumerate_language_fibonacci(fib):
    lang = mc.enumerate_language(fib, 9)
    assert {len(w) for w in lang} == {1, 2, 3, 5, 8}


def test_enumerate_language_budget_error(fib):
    with pytest.raises(mc.SearchLimitError):
        mc.enumerate_language(fib, 9, SearchBounds(60, 10))


# --- construction validation ---------------------------------------------------------------------

def test_automaton_validation_errors():
    base = dict(levels=2, states=("q",), initial_state="q",
                input_alphabet=("x",), store_alphabet=("Z",),
                initial_symbol="Z")
    with pytest.raises(mc.MachineError):
        Automaton(transitions=(T("q", "x", ("Z",), "nope", Pop(1)),), **base)
    with pytest.raises(mc.MachineError):
        Automaton(transitions=(T("q", "z", ("Z",), "q", Pop(1)),), **base)
    with pytest.raises(mc.MachineError):
        Automaton(transitions=(T("q", "x", ("Z",), "q", Pop(3)),), **base)
    with pytest.raises(mc.MachineError):
        Automaton(transitions=(T("q", "x", ("Q",), "q", Pop(1)),), **base)
    with pytest.raises(mc.MachineError):
        Automaton(transitions=(T("q", "x", ("Z",), "q", Push(1, ("Q",))),),
                  **base)


def test_duplicate_transitions_merge(fib):
    doubled = Automaton(
        levels=fib.levels, states=fib.states, initial_state=fib.initial_state,
        input_alphabet=fib.input_alphabet, store_alphabet=fib.store_alphabet,
        initial_symbol=fib.initial_symbol,
        transitions=fib.transitions + fib.transitions)
    v1 = mc.accepts(fib, "a" * 5)
    v2 = mc.accepts(doubled, "a" * 5)
    assert v1.status == v2.status == ACCEPTED
    assert v1.configurations == v2.configurations


# --- file format -----------------------------------------------------------------------------------

def test_render_parse_round_trip(fib):
    assert mc.parse_automaton(mc.render_automaton(fib)) == fib


def test_round_trip_multichar_symbols():
    a = Automaton(
        levels=2, states=("q0",), initial_state="q0",
        input_alphabet=("x",), store_alphabet=("Z", "X1", "6a"),
        initial_symbol="Z",
        transitions=(
            T("q0", None, ("Z",), "q0", Push(1, ("X1", "6a"))),
            T("q0", "x", ("X1", "6a"), "q0", Pop(2)),
        ))
    text = mc.render_automaton(a)
    assert "[X1 6a]" in text
    assert mc.parse_automaton(text) == a


HEADER = """levels: 2
states: q0 q1
initial: q0
input: a
store: Z F
start_symbol: Z
"""


def test_parse_example_format():
    a = mc.parse_automaton(HEADER + "t: q0 eps Z -> q0 push 2 F\n"
                                    "t: q0 a ZF -> q1 pop 2\n")
    assert a.levels == 2
    assert a.transitions[0].action == Push(2, ("F",))
    assert a.transitions[1].pattern == ("Z", "F")


def test_parse_comments_and_blank_lines():
    text = "# a comment\n\n" + HEADER + "t: q0 eps Z -> q0 pop 1  # inline\n"
    assert len(mc.parse_automaton(text).transitions) == 1


@pytest.mark.parametrize("line,fragment", [
    ("t: q0 eps Z -> q0 push 3 F", "level 3"),
    ("t: qZ eps Z -> q0 pop 1", "undeclared state"),
    ("t: q0 eps Z -> qZ pop 1", "undeclared state"),
    ("t: q0 zz Z -> q0 pop 1", "undeclared input letter"),
    ("t: q0 eps Q -> q0 pop 1", "pattern"),
    ("t: q0 eps Z q0 pop 1", "->"),
    ("t: q0 eps Z -> q0 shove 1", "pop"),
    ("bogus line without colon", "key: value"),
])
def test_parse_errors_carry_line_numbers(line, fragment):
    with pytest.raises(mc.AutomatonFormatError) as exc:
        mc.parse_automaton(HEADER + line + "\n")
    assert exc.value.line == 7  # first line after the 6 header lines
    assert fragment in str(exc.value)


def test_parse_missing_header():
    with pytest.raises(mc.AutomatonFormatError):
        mc.parse_automaton("levels: 2\n")
