"""Sweeping a one-parameter solution family and plotting the diagnostics.

For a single boundary royal node (node 1, value i, derivative constraint 1)
the solutions form a genuine one-parameter family.  This script materializes
the family over a parameter grid through the command-line entry points,
producing a CSV table (one row per accepted parameter) and an SVG with the
circle profiles |s(e^{i theta})| and arg p(e^{i theta}) plus a marker at the
royal node angle.

Equivalent shell command:

    royalgamma sweep --input data.json --output sweep.csv --omega-grid 128 --plot
"""

import json
import pathlib

from royalgamma.cli import main

OUT_DIR = pathlib.Path(__file__).resolve().parent / "output"


def run():
    OUT_DIR.mkdir(exist_ok=True)
    data_path = OUT_DIR / "boundary_node.json"
    data_path.write_text(json.dumps(
        {"nodes": [{"sigma": [1.0, 0.0], "eta": [0.0, 1.0], "rho": 1.0}]}, indent=2
    ))

    csv_path = OUT_DIR / "family_sweep.csv"
    code = main([
        "sweep",
        "--input", str(data_path),
        "--output", str(csv_path),
        "--omega-grid", "128",
        "--plot",
    ])
    assert code == 0, f"sweep exited with {code}"

    rows = csv_path.read_text().strip().splitlines()
    print(f"swept family: {len(rows) - 1} accepted parameters "
          f"(the two with |t| = 1 are rejected)")
    print("columns:", ", ".join(rows[0].split(",")[:7]), "...")
    print(f"CSV written to  {csv_path}")
    print(f"plot written to {csv_path.with_suffix('.svg')}")

    solve_path = OUT_DIR / "solve_result.json"
    code = main(["solve", "--input", str(data_path), "--output", str(solve_path),
                 "--omega-grid", "16"])
    assert code == 0
    payload = json.loads(solve_path.read_text())
    print(f"\nfull solve: {payload['verified_count']} verified solutions, "
          f"base point tau = {payload['tau']}")


if __name__ == "__main__":
    run()
