"""Tour the HTTP service the browser front end talks to.

Starts the service on a free local port, walks the four POST endpoints,
and shuts down.  Every number the front end displays comes from these
responses; the client never recomputes densities locally.
"""

import json
import urllib.request

from priorrank.service import start_background

server, _thread = start_background(port=0)
base = f"http://127.0.0.1:{server.server_address[1]}"
print(f"service up at {base}\n")


def post(path, body):
    req = urllib.request.Request(
        base + path, data=json.dumps(body).encode(), method="POST",
        headers={"Content-Type": "application/json"},
    )
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


health = json.loads(urllib.request.urlopen(base + "/api/health").read())
print(f"GET /api/health -> {health}")

skew = {"family": "skew_normal", "parameters": {"mean": 2.15, "sd": 0.09, "shape": 0.78}}
dens = post("/api/density", {"spec": skew, "xs": [2.0, 2.15, 2.3]})
print(f"POST /api/density -> {dens['densities']}")

quants = post("/api/quantiles", {"spec": skew, "ps": [0.05, 0.5, 0.95]})
print(f"POST /api/quantiles -> {quants['xs']}")

klres = post(
    "/api/kl",
    {
        "p": {"family": "normal", "parameters": {"mean": 0, "sd": 1}},
        "q": {"family": "normal", "parameters": {"mean": 1, "sd": 1}},
    },
)
print(f"POST /api/kl N(0,1) vs N(1,1) -> value={klres['value']}")

rank = post(
    "/api/rank",
    {
        "posterior": {"mean": 2.29, "sd": 0.0945},
        "benchmark": {"family": "uniform", "parameters": {"lower": 0, "upper": 5}},
        "experts": [
            {"id": "e1", "label": "Expert 1", "family": "skew_normal",
             "parameters": {"mean": 2.15, "sd": 0.09, "shape": 0.78}},
            {"id": "e4", "label": "Expert 4", "family": "skew_normal",
             "parameters": {"mean": 2.35, "sd": 0.11, "shape": 0.94}},
        ],
    },
)
print("POST /api/rank ->")
for entry in rank["entries"]:
    print(
        f"  {entry['expert_id']}: score={entry['dac']:.3f} "
        f"conflict={entry['conflict']} rank={entry['rank']}"
    )

server.shutdown()
server.server_close()
print("\nservice stopped")
