"""Playing the search game against the session service.

The service hides a randomly drawn stimulus behind a click API: you see
scores, never the function. Finishing reveals the function and the regret
summary, and persists the trace in the gamestore so the compliance analyzer
can pick it up later. The same flow is served over HTTP by
`searchlab serve` (endpoints documented in the README); here we drive the
in-process core directly.
"""

import numpy as np

from searchlab.gamestore import GameStore
from searchlab.service import GameService

store = GameStore()  # pass a path to persist on disk
service = GameService(store=store, budget=10, seed=20)

session = service.create_session(user_id="demo-player", mode=2)
sid = session["session_id"]
print(f"session {sid[:8]}..., mode 2: the target value {session['target_value']} is shown")
print(f"budget: {session['budget']} clicks\n")

# a simple human-ish strategy: coarse sweep, then clicks near the best spot
rng = np.random.default_rng(5)
probes = [(0.2, 0.2), (0.8, 0.2), (0.5, 0.5), (0.2, 0.8), (0.8, 0.8)]
best = None
for p in probes:
    out = service.click(sid, *p)
    if best is None or out["score"] > best[1]:
        best = (p, out["score"])
    print(f"probe ({p[0]:.2f}, {p[1]:.2f}) -> {out['score']:6.2f}   ({out['clicks_remaining']} left)")

while service.get_state(sid)["clicks_remaining"] > 0:
    p = np.clip(np.asarray(best[0]) + rng.normal(0, 0.08, 2), 0, 1)
    out = service.click(sid, *p)
    if out["score"] > best[1]:
        best = (tuple(p), out["score"])
    print(f"local ({p[0]:.2f}, {p[1]:.2f}) -> {out['score']:6.2f}   ({out['clicks_remaining']} left)")

summary = service.finish_session(sid)
print(f"\nrevealed: function {summary['function_id']} ({summary['function_name']})")
print(f"best score         {summary['best_score']:.2f}")
print(f"simple regret      {summary['simple_regret']:.2f}")
print(f"cumulative regret  {summary['cumulative_regret']:.2f}")

trace = store.load_trace("demo-player", summary["game_end_timestamp"])
print(f"\npersisted trace: {len(trace)} clicks, source={trace.meta.source!r}")
print("wire format, first two records:")
print("\n".join(store.export_all().splitlines()[:2]))
