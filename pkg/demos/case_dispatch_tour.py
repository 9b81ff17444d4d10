# The ultimate-survival solver picks its linear-algebra route from the
# smallest claim total that carries positive probability.  This tour
# instantiates one model per route and prints what the classifier says
# next to the first few survival values, so you can see every branch
# fire without reading the dispatch code.

from ruinwalk import ModelSpec, classify, from_probs, net_profit_margin, survival_ultimate


def tour_model(name, x_probs, y_probs):
    model = ModelSpec(x=from_probs(x_probs), y=from_probs(y_probs))
    tag = classify(model)
    scenario = f" {tag.scenario}" if tag.scenario else ""
    print(f"{name}: case {tag.kind.value}{scenario}, smallest claim total {tag.min_s_atom}")
    print(f"  margin per two periods: {net_profit_margin(model):.4f}")
    result = survival_ultimate(model, u_max=5)
    values = ", ".join(f"{v:.5f}" for v in result.phi)
    print(f"  phi(0..5) = {values}")
    print()


# s_0 > 0: both claims can vanish simultaneously
tour_model("A", [0.6, 0.4], [0.5, 0.5])

# s_0 = 0 but s_1 > 0, reachable two ways
tour_model("B via X", [0.0, 0.7, 0.3], [0.6, 0.4])
tour_model("B via Y", [0.5, 0.5], [0.0, 0.6, 0.4])

# smallest total is 2, split by which claim supplies it
tour_model("C s.1", [0.0, 0.8, 0.2], [0.0, 0.7, 0.3])
tour_model("C s.2", [0.5, 0.4, 0.1], [0.0, 0.0, 0.8, 0.2])
tour_model("C s.3", [0.0, 0.0, 0.6, 0.4], [0.7, 0.2, 0.1])

# smallest total is 3: solved in closed form, no recurrence needed
tour_model("D v.1", [0.0, 0.0, 0.8, 0.2], [0.0, 0.7, 0.3])
tour_model("D v.2", [0.0, 0.6, 0.3, 0.1], [0.0, 0.0, 0.9, 0.1])
tour_model("D v.3", [0.0, 0.0, 0.0, 0.7, 0.3], [0.8, 0.2])
tour_model("D v.4", [0.7, 0.2, 0.1], [0.0, 0.0, 0.0, 0.8, 0.2])

# mean claims >= income: survival is impossible from any finite capital
tour_model("no net profit", [0.0, 0.0, 0.5, 0.5], [0.0, 0.1, 0.4, 0.5])
