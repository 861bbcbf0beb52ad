"""Independent single-file rule interpreter used as a brute-force oracle.

Deliberately written in a different style from the package engine (flat
mutable dicts, one big step function) so that agreement between the two is
meaningful. Covers chef-turn mechanics only: movement, the interaction
table, pot cooking, patience, tips.
"""

COOK = {"PP": 1, "P": 1, "O": 55, "TTTT": 1}
SERVINGS = {"PP": 1, "P": 1, "O": 1, "TTTT": 4}
RECIPES = {
    ("potato", "potato"): "PP",
    ("potato",): "P",
    ("onion",): "O",
    ("tomato", "tomato", "tomato", "tomato"): "TTTT",
}
TIPS = {
    "executive": {"PP": 100, "P": 0, "O": 100, "TTTT": 0},
    "hipster": {"PP": 20, "P": 20, "O": 0, "TTTT": 10},
    "tourist": {"PP": 20, "P": 20, "O": 20, "TTTT": 10},
}
DELTA = {"N": (-1, 0), "S": (1, 0), "E": (0, 1), "W": (0, -1)}


def ref_state(layout_rows, customers, potatoes, points, start, facing="N"):
    """customers: list of dicts {seat, profile, patience} active this round."""
    grid = [list(row) for row in layout_rows]
    pots = []
    for r, row in enumerate(grid):
        for c, g in enumerate(row):
            if g == "U":
                pots.append((r, c))
    return {
        "grid": grid,
        "pots_at": pots,
        "pot": {p: {"contents": [], "progress": 0} for p in pots},
        "counter": {},
        "pos": start,
        "facing": facing,
        "held": ("nothing",),
        "points": points,
        "t": 0,
        "inventory": potatoes,
        "customers": {
            c["seat"]: dict(c, status="waiting", tip=0, dish=None) for c in customers
        },
        "tips": 0,
    }


def _glyph(state, pos):
    r, c = pos
    if 0 <= r < len(state["grid"]) and 0 <= c < len(state["grid"][0]):
        return state["grid"][r][c]
    return None


def _walkable(state, pos):
    return _glyph(state, pos) in (".", "C")


def _faced(state):
    dr, dc = DELTA[state["facing"]]
    return (state["pos"][0] + dr, state["pos"][1] + dc)


def _recipe_of(contents):
    return RECIPES.get(tuple(sorted(contents)))


def _fits_recipe(contents):
    from collections import Counter

    have = Counter(contents)
    for recipe in RECIPES:
        need = Counter(recipe)
        if all(need[k] >= v for k, v in have.items()):
            return True
    return False


def ref_legal(state, action):
    if state["points"] <= 0:
        return False
    kind = action[0]
    if kind == "wait":
        return True
    if kind == "move":
        dr, dc = DELTA[action[1]]
        return _walkable(state, (state["pos"][0] + dr, state["pos"][1] + dc))
    faced = _faced(state)
    g = _glyph(state, faced)
    if kind == "clear":
        return g == "U" and bool(state["pot"][faced]["contents"])
    # interact
    held = state["held"]
    if g in ("O", "T", "P"):
        name = {"O": "onion", "T": "tomato", "P": "potato"}[g]
        if held != ("nothing",):
            return False
        return name != "potato" or state["inventory"] >= 1
    if g == "D":
        return held == ("nothing",)
    if g == "U":
        pot = state["pot"][faced]
        if held[0] == "ingredient":
            return _fits_recipe(pot["contents"] + [held[1]])
        if held == ("plate",):
            dish = _recipe_of(pot["contents"])
            return dish is not None and pot["progress"] + 1 >= COOK[dish]
        return False
    if g == "#":
        if held == ("nothing",):
            return faced in state["counter"]
        return faced not in state["counter"]
    if g in "1234":
        cust = state["customers"].get(int(g))
        return cust is not None and cust["status"] != "served" and held[0] == "dish"
    return False


def ref_legal_actions(state):
    acts = [("move", d) for d in "NSEW"] + [("interact",), ("clear",), ("wait",)]
    return {a for a in acts if ref_legal(state, a)}


def ref_step(state, action):
    assert ref_legal(state, action), (action, state["pos"], state["held"])
    state["points"] -= 1
    state["t"] += 1
    # pots cook first
    for pot in state["pot"].values():
        dish = _recipe_of(pot["contents"])
        if dish is not None:
            pot["progress"] = min(pot["progress"] + 1, COOK[dish])
    # impatient customers leave
    for cust in state["customers"].values():
        if cust["status"] == "waiting" and cust["patience"] < state["t"]:
            cust["status"] = "left"

    kind = action[0]
    if kind == "wait":
        return state
    if kind == "move":
        dr, dc = DELTA[action[1]]
        state["pos"] = (state["pos"][0] + dr, state["pos"][1] + dc)
        state["facing"] = action[1]
        return state
    faced = _faced(state)
    if kind == "clear":
        state["pot"][faced] = {"contents": [], "progress": 0}
        return state

    g = _glyph(state, faced)
    held = state["held"]
    if g in ("O", "T", "P"):
        name = {"O": "onion", "T": "tomato", "P": "potato"}[g]
        state["held"] = ("ingredient", name)
        if name == "potato":
            state["inventory"] -= 1
    elif g == "D":
        state["held"] = ("plate",)
    elif g == "U":
        pot = state["pot"][faced]
        if held[0] == "ingredient":
            pot["contents"] = sorted(pot["contents"] + [held[1]])
            pot["progress"] = 0
            state["held"] = ("nothing",)
        else:
            dish = _recipe_of(pot["contents"])
            state["pot"][faced] = {"contents": [], "progress": 0}
            state["held"] = ("dish", dish, SERVINGS[dish])
    elif g == "#":
        if held == ("nothing",):
            state["held"] = state["counter"].pop(faced)
        else:
            state["counter"][faced] = held
            state["held"] = ("nothing",)
    elif g in "1234":
        cust = state["customers"][int(g)]
        _, dish, servings = held
        if cust["status"] == "waiting":
            tip = TIPS[cust["profile"]][dish] if state["t"] <= cust["patience"] else 0
            cust.update(status="served", tip=tip, dish=dish)
            state["tips"] += tip
            state["held"] = ("nothing",) if servings == 1 else ("dish", dish, servings - 1)
    return state


def fingerprint(state):
    """Comparable summary of everything the rules care about."""
    return (
        state["pos"],
        state["facing"],
        state["held"],
        state["points"],
        tuple(
            (p, tuple(state["pot"][p]["contents"]), state["pot"][p]["progress"])
            for p in state["pots_at"]
        ),
        tuple(sorted((p, i) for p, i in state["counter"].items())),
        state["inventory"],
        tuple(
            (seat, c["status"], c["tip"], c["dish"])
            for seat, c in sorted(state["customers"].items())
        ),
        state["tips"],
    )
