"""Degree relations and halfedge claims on K5 and on a synthetic ledger.

    python3 demos/charging_audit.py
"""

import networkx as nx

from kplane import audit, graphs

k5 = graphs.gen_complete(5)
print("K5 density verdict:", audit.density_verdict(k5).as_dict())
rel = audit.degree_inequalities(k5, maximal=True)
for r in rel["relations"]:
    print(f"  {r['name']:<28} {r['lhs']:>4} {r['relation']} {r['rhs']:<4} slack {r['slack']}")

# a mingler on every face of the icosahedron: twenty degree-three vertices
# competing for halfedges around twelve degree-ten centers
ico = nx.icosahedral_graph()
adj = {v: set(ico[v]) for v in ico}
kinds = {}
for tri in sorted({tuple(sorted(c)) for c in nx.enumerate_all_cliques(ico) if len(c) == 3}):
    u = len(adj)
    adj[u] = set(tri)
    for x in tri:
        adj[x].add(u)
    kinds[u] = audit.T3_3_MINGLER

led = audit.synthetic_ledger(adj, kinds)
print("assignment exists:", audit.assignment_exists(led))
audit.resolve_claims(led)
steps = {}
for step, *_ in led.trace:
    steps[step] = steps.get(step, 0) + 1
print("resolution steps:", steps)
print("unresolved:", led.unresolved, "conflicts:", led.conflicts, "quota failures:", led.quota_failures())
