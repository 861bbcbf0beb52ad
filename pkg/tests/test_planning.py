import random
from dataclasses import replace

import pytest

from hybs.errors import NoFeasibleMacro, PlanNotFound
from hybs.game import (
    PotState,
    apply_action,
    held_dish,
    held_ingredient,
    legal_actions,
    load_layout,
)
from hybs.planning import (
    AtCenter,
    Hold,
    MacroPlan,
    ServeCustomer,
    StageIngredient,
    apply_macro,
    candidate_context,
    expand_macro,
    get_ingredient,
    get_plate,
    goal_satisfied,
    goap_heuristic,
    goap_plan,
    legal_macros,
    mcts_plan,
    put_in_pot,
    return_to_center,
    serve_dish,
    simulate_plan,
    wait_for_cook,
)

from .helpers import fresh_game, make_scenario, start_chef_round, with_budget

# ------------------------------------------------------------ BFS oracle


def _full_key(state):
    return (state.plan_key(), state.actions_this_round)


def bfs_optimal_cost(state, goal) -> int | None:
    """Breadth-first search over raw engine actions: the exact optimum."""
    if goal_satisfied(state, goal):
        return 0
    seen = {_full_key(state)}
    frontier = [state]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for s in frontier:
            if s.action_points <= 0:
                continue
            for action in sorted(legal_actions(s)):
                s2, _ = apply_action(s, action)
                if goal_satisfied(s2, goal):
                    return depth
                key = _full_key(s2)
                if key not in seen:
                    seen.add(key)
                    nxt.append(s2)
        frontier = nxt
    return None


# ---------------------------------------------------- random small kitchens


def random_small_layout(rng: random.Random):
    """Random valid 5x6 kitchen: fixtures shuffled along the border."""
    height, width = 5, 6
    border = []
    for c in range(1, width - 1):
        border.append((0, c))
        border.append((height - 1, c))
    for r in range(1, height - 1):
        border.append((r, 0))
        border.append((r, width - 1))
    rng.shuffle(border)
    fixtures = ["U", "T", "P", "O", "D", "1", "2", "3", "4"]
    grid = [["#"] * width for _ in range(height)]
    for r in range(1, height - 1):
        for c in range(1, width - 1):
            grid[r][c] = "."
    for glyph, pos in zip(fixtures, border):
        grid[pos[0]][pos[1]] = glyph
    interior = [(r, c) for r in range(1, height - 1) for c in range(1, width - 1)]
    grid[interior[rng.randrange(len(interior))][0]][interior[0][1]] = "."  # no-op keepalive
    cr, cc = interior[rng.randrange(len(interior))]
    grid[cr][cc] = "C"
    text = "\n".join("".join(row) for row in grid) + "\n"
    return load_layout(text)


def random_instance(seed: int):
    """(state, goal) pair on a random small kitchen, chef round, tiny budget."""
    rng = random.Random(seed)
    layout = random_small_layout(rng)
    potatoes = rng.randint(0, 3)
    sc = make_scenario(potatoes=potatoes, patience=(rng.choice([6, 9, 120]),) * 12)
    state = start_chef_round(fresh_game(layout, sc))
    state = with_budget(state, rng.randint(8, 14))
    # random starting hand
    held = rng.choice(
        [("nothing",), ("plate",), held_ingredient("onion"), held_ingredient("tomato")]
    )
    state = replace(state, held=held)
    roll = rng.random()
    if roll < 0.45:
        goal = (Hold(("ingredient", rng.choice(["onion", "tomato", "potato"]))),)
    elif roll < 0.7:
        goal = (ServeCustomer(f"c0{rng.randint(1, 4)}", rng.choice(["P", "PP"])),)
    elif roll < 0.85:
        goal = (StageIngredient(rng.choice(["onion", "tomato"]), 1),)
    else:
        goal = (AtCenter(),)
    return state, goal


# ------------------------------------------------------------- goap basics


def test_satisfied_goal_is_empty_plan(small_layout):
    state = start_chef_round(fresh_game(small_layout))
    plan = goap_plan(state, (AtCenter(),))
    assert plan.actions == () and plan.cost == 0


def test_fetch_onion_matches_bfs(small_layout):
    state = start_chef_round(fresh_game(small_layout))
    goal = (Hold(("ingredient", "onion")),)
    plan = goap_plan(state, goal)
    assert plan.cost == bfs_optimal_cost(with_budget(state, 20), goal)
    end = simulate_plan(state, plan)
    assert goal_satisfied(end, goal)


def test_pp_infeasible_with_one_potato(small_layout):
    sc = make_scenario(potatoes=1)
    state = start_chef_round(fresh_game(small_layout, sc))
    with pytest.raises(PlanNotFound):
        goap_plan(state, (ServeCustomer("c01", "PP"),))


def test_serve_unreachable_after_left(small_layout):
    sc = make_scenario(patience=(2,) * 12)
    state = start_chef_round(fresh_game(small_layout, sc))
    state, _ = apply_action(state, ("wait",))
    state, _ = apply_action(state, ("wait",))
    state, _ = apply_action(state, ("wait",))
    with pytest.raises(PlanNotFound):
        goap_plan(state, (ServeCustomer("c01", "P"),))


def test_plan_respects_budget(small_layout):
    state = with_budget(start_chef_round(fresh_game(small_layout)), 5)
    with pytest.raises(PlanNotFound):
        goap_plan(state, (ServeCustomer("c01", "P"),))  # needs ~21 actions


def test_budget_exhausted(small_layout):
    from hybs.errors import BudgetExhausted

    state = start_chef_round(fresh_game(small_layout))
    with pytest.raises(BudgetExhausted):
        goap_plan(state, (ServeCustomer("c01", "P"),), node_cap=3)


def test_determinism(small_layout):
    state = start_chef_round(fresh_game(small_layout))
    goal = (ServeCustomer("c02", "P"), StageIngredient("tomato", 1))
    p1 = goap_plan(state, goal)
    p2 = goap_plan(state, goal)
    assert p1.actions == p2.actions


# -------------------------------------------------------- oracle equivalence


@pytest.mark.parametrize("seed", range(40))
def test_goap_matches_bfs_randomized(seed):
    state, goal = random_instance(seed)
    oracle = bfs_optimal_cost(state, goal)
    try:
        plan = goap_plan(state, goal, node_cap=300_000)
    except PlanNotFound:
        assert oracle is None, f"goap failed but bfs found cost {oracle}"
        return
    assert oracle == plan.cost, f"goap {plan.cost} != bfs {oracle}"
    end = simulate_plan(state, plan)  # legality: no IllegalAction
    assert goal_satisfied(end, goal)


# ------------------------------------------------------------ the heuristic


def test_heuristic_zero_when_satisfied(small_layout):
    state = start_chef_round(fresh_game(small_layout))
    assert goap_heuristic(state, (AtCenter(),)) == 0


def test_heuristic_adjacent_serve_is_one(small_layout):
    state = start_chef_round(fresh_game(small_layout))
    state = replace(state, chef_pos=(1, 1), chef_facing="N", held=held_dish("P", 1))
    assert goap_heuristic(state, (ServeCustomer("c01", "P"),)) == 1


@pytest.mark.parametrize("block", range(4))
def test_heuristic_admissible_randomized(block):
    solved = 0
    seed = block * 5000
    while solved < 250:
        seed += 1
        state, goal = random_instance(seed)
        h = goap_heuristic(state, goal)
        try:
            plan = goap_plan(state, goal, node_cap=300_000)
        except PlanNotFound:
            continue
        solved += 1
        assert h is not None
        assert 0 <= h <= plan.cost, (seed, h, plan.cost, goal)


# -------------------------------------------------------------- macros


def test_expand_return_to_center_at_center(small_layout):
    state = start_chef_round(fresh_game(small_layout))
    plan = expand_macro(state, return_to_center())
    assert plan.actions == ()


def test_get_potato_empty_inventory(small_layout):
    state = start_chef_round(fresh_game(small_layout, make_scenario(potatoes=0)))
    with pytest.raises(PlanNotFound):
        expand_macro(state, get_ingredient("potato"))


@pytest.mark.parametrize("progress", [0, 20, 54])
def test_wait_for_cook_emits_waits(small_layout, progress):
    state = start_chef_round(fresh_game(small_layout))
    state = replace(state, pots=(PotState(contents=("onion",), progress=progress),))
    plan = expand_macro(state, wait_for_cook(0))
    assert plan.actions == (("wait",),) * (55 - progress)


def test_macro_jump_equals_expansion(small_layout):
    """apply_macro must land exactly where executing the raw plan lands."""
    state = start_chef_round(fresh_game(small_layout, make_scenario(potatoes=2)))
    for macro in (get_ingredient("potato"), put_in_pot(0), get_plate()):
        jumped, cost = apply_macro(state, macro)
        plan = expand_macro(state, macro)
        assert plan.cost == cost
        stepped = simulate_plan(state, plan)
        assert stepped.plan_key() == jumped.plan_key()
        assert stepped.actions_this_round == jumped.actions_this_round
        state = stepped


def test_serve_macro_respects_patience(small_layout):
    # seat 1 is 2 moves + 1 interact away: patience 3 works, patience 2 cannot
    ok = start_chef_round(fresh_game(small_layout, make_scenario(patience=(3,) * 12)))
    ok = replace(ok, held=held_dish("P", 1))
    served, _cost = apply_macro(ok, serve_dish("c01"))
    assert served.customer_by_id("c01").status == "served"

    late = start_chef_round(fresh_game(small_layout, make_scenario(patience=(2,) * 12)))
    late = replace(late, held=held_dish("P", 1))
    assert apply_macro(late, serve_dish("c01")) is None


# ---------------------------------------------------------------- MCTS


def single_customer_state(small_layout, budget=40):
    sc = make_scenario(
        profiles=("tourist",) * 12, patience=(120,) * 12, potatoes=2
    )
    state = start_chef_round(fresh_game(small_layout, sc))
    return with_budget(state, budget)


def chain_bruteforce(state, goals, depth):
    """Exhaustive (tips, -cost) optimum over macro chains up to `depth`."""
    ctx = candidate_context(state, goals)
    best = (0, 0)

    def rec(s, tips, cost, d):
        nonlocal best
        if (tips, -cost) > best:
            best = (tips, -cost)
        if d == 0:
            return
        for macro in legal_macros(s, ctx):
            hit = apply_macro(s, macro)
            if hit is None:
                continue
            s2, c = hit
            rec(s2, tips + (s2.tips_total - s.tips_total), cost + c, d - 1)

    rec(state, 0, 0, depth)
    return best[0], -best[1]


def test_mcts_single_customer_oracle(small_layout):
    # exploration scaled to the tip range; the spec default suits macro counts
    state = single_customer_state(small_layout)
    goals = [(ServeCustomer("c01", "P"),)]
    oracle_tips, oracle_cost = chain_bruteforce(state, goals, 5)
    assert oracle_tips == 20
    hits = 0
    for seed in range(20):
        plan = mcts_plan(state, goals, iterations=800, exploration=25, seed=seed)
        if (plan.expected_tip, plan.expected_cost) == (oracle_tips, oracle_cost):
            hits += 1
    assert hits >= 19


def test_mcts_cap_respected(small_layout):
    state = single_customer_state(small_layout)
    plan = mcts_plan(state, [(ServeCustomer("c01", "P"),)], iterations=37, seed=1)
    assert plan.simulations == 37


def test_mcts_anytime_monotone(small_layout):
    state = single_customer_state(small_layout)
    goals = [(ServeCustomer("c01", "P"),), (ServeCustomer("c02", "P"),)]
    for seed in range(5):
        rewards = [
            mcts_plan(state, goals, iterations=cap, seed=seed).expected_tip
            for cap in (1, 10, 100, 400)
        ]
        assert rewards == sorted(rewards), (seed, rewards)


def test_mcts_chain_is_legal(small_layout):
    state = single_customer_state(small_layout)
    plan = mcts_plan(state, [(ServeCustomer("c01", "P"),)], iterations=200, seed=3)
    s = state
    for macro in plan.chain:
        hit = apply_macro(s, macro)
        assert hit is not None, macro
        s = hit[0]


def test_mcts_deterministic(small_layout):
    state = single_customer_state(small_layout)
    a = mcts_plan(state, [(ServeCustomer("c01", "P"),)], iterations=150, seed=11)
    b = mcts_plan(state, [(ServeCustomer("c01", "P"),)], iterations=150, seed=11)
    assert a == b


def test_mcts_no_feasible_macro(small_layout):
    state = with_budget(start_chef_round(fresh_game(small_layout)), 0)
    with pytest.raises(NoFeasibleMacro):
        mcts_plan(state, [], iterations=5, seed=0)


def test_mcts_cap_one_anytime(small_layout):
    state = single_customer_state(small_layout)
    plan = mcts_plan(state, [(ServeCustomer("c01", "P"),)], iterations=1, seed=0)
    assert isinstance(plan, MacroPlan)
    s = state
    for macro in plan.chain:
        s = apply_macro(s, macro)[0]
