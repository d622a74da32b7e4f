"""Figure rendering for the bench CSV output.

Reads the delimited bench output back in and writes one PNG per
workload next to it: gate counts against graph size, and for the
readout workload the mean copy count against the 4n+1 budget line.
"""

from __future__ import annotations

import csv
import os
from collections import defaultdict
from typing import Dict, List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def read_bench_csv(path: str) -> Dict[str, List[dict]]:
    by_workload: Dict[str, List[dict]] = defaultdict(list)
    with open(path) as fh:
        for row in csv.DictReader(fh):
            by_workload[row["workload"]].append(
                {
                    "n": int(row["n"]),
                    "param": float(row["param"]),
                    "one_qubit_gates": int(row["one_qubit_gates"]),
                    "two_qubit_gates": int(row["two_qubit_gates"]),
                    "measurements": int(row["measurements"]),
                    "copies": float(row["copies"]),
                }
            )
    return dict(by_workload)


def render_bench_figures(csv_path: str, out_dir: str) -> List[str]:
    """Render one figure per workload found in the CSV; returns paths."""
    os.makedirs(out_dir, exist_ok=True)
    data = read_bench_csv(csv_path)
    stem = os.path.splitext(os.path.basename(csv_path))[0]
    written = []
    for workload, rows in sorted(data.items()):
        rows = sorted(rows, key=lambda r: r["n"])
        ns = [r["n"] for r in rows]
        fig, ax = plt.subplots(figsize=(5.0, 3.5))
        if workload == "readout_copies":
            ax.plot(ns, [r["copies"] for r in rows], "o-", label="mean copies")
            ax.plot(ns, [4 * n + 1 for n in ns], "k--", label="4n+1 budget")
            ax.set_ylabel("copies of the state")
        else:
            ax.plot(ns, [r["two_qubit_gates"] for r in rows], "o-", label="two-qubit gates")
            ax.plot(ns, [r["one_qubit_gates"] for r in rows], "s-", label="one-qubit gates")
            if workload == "prepare_complete_iec":
                ax.plot(
                    ns,
                    [n * (n - 1) // 2 for n in ns],
                    "k--",
                    label="constructive n(n-1)/2",
                )
            ax.set_ylabel("elementary gates")
        ax.set_xlabel("vertices n")
        ax.set_title(workload)
        ax.legend(fontsize=8)
        fig.tight_layout()
        path = os.path.join(out_dir, f"{stem}_{workload}.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
