#!/usr/bin/env python3
"""Fetch the public C.elegans and Power datasets into data/.

Both graphs are distributed as GML inside zip archives. The converter keeps
only the edge structure, writing one `u v` pair per line; the loader on the
Rust side drops self-loops and merges duplicate/reversed edges, which yields
the undirected simple graphs (297 nodes / 2148 edges and 4941 / 6594) the
evaluation expects.

Usage: python3 scripts/fetch_datasets.py [--data-dir data]
"""

import argparse
import io
import re
import sys
import urllib.request
import zipfile
from pathlib import Path

DATASETS = {
    "celegans.edgelist": {
        "urls": [
            "https://websites.umich.edu/~mejn/netdata/celegansneural.zip",
            "http://www-personal.umich.edu/~mejn/netdata/celegansneural.zip",
            "https://networks.skewed.de/net/celegansneural/files/celegansneural.csv.zip",
        ],
        "nodes": 297,
        "edges": 2148,
    },
    "power.edgelist": {
        "urls": [
            "https://websites.umich.edu/~mejn/netdata/power.zip",
            "http://www-personal.umich.edu/~mejn/netdata/power.zip",
            "https://networks.skewed.de/net/power/files/power.csv.zip",
        ],
        "nodes": 4941,
        "edges": 6594,
    },
}

EDGE_RE = re.compile(r"edge\s*\[[^]]*?source\s+(\d+)[^]]*?target\s+(\d+)[^]]*?\]", re.S)


def extract_edges(archive: bytes) -> list[tuple[str, str]]:
    with zipfile.ZipFile(io.BytesIO(archive)) as zf:
        for name in zf.namelist():
            if name.endswith(".gml"):
                text = zf.read(name).decode("utf-8", errors="replace")
                return [(a, b) for a, b in EDGE_RE.findall(text)]
        for name in zf.namelist():
            if name == "edges.csv" or name.endswith("/edges.csv"):
                edges = []
                for line in zf.read(name).decode("utf-8").splitlines():
                    line = line.strip()
                    if not line or line.startswith("#") or line.startswith("source"):
                        continue
                    parts = re.split(r"[,\s]+", line)
                    edges.append((parts[0], parts[1]))
                return edges
    raise RuntimeError("no .gml or edges.csv member in archive")


def simple_undirected_count(edges: list[tuple[str, str]]) -> tuple[int, int]:
    nodes = set()
    canon = set()
    for a, b in edges:
        if a == b:
            continue
        nodes.add(a)
        nodes.add(b)
        canon.add((a, b) if a < b else (b, a))
    return len(nodes), len(canon)


def fetch(name: str, spec: dict, data_dir: Path) -> None:
    target = data_dir / name
    if target.exists():
        print(f"{target} already present; skipping")
        return
    last_error = None
    for url in spec["urls"]:
        try:
            print(f"fetching {url} ...")
            with urllib.request.urlopen(url, timeout=60) as response:
                archive = response.read()
            edges = extract_edges(archive)
            nodes, simple_edges = simple_undirected_count(edges)
            if nodes != spec["nodes"] or simple_edges != spec["edges"]:
                raise RuntimeError(
                    f"unexpected graph size {nodes} nodes / {simple_edges} edges "
                    f"(want {spec['nodes']} / {spec['edges']})"
                )
            data_dir.mkdir(parents=True, exist_ok=True)
            with open(target, "w") as out:
                out.write(f"# {name}: {nodes} nodes, {simple_edges} undirected simple edges\n")
                for a, b in edges:
                    out.write(f"{a} {b}\n")
            print(f"wrote {target} ({nodes} nodes, {simple_edges} edges)")
            return
        except Exception as exc:  # noqa: BLE001 - report and try the next mirror
            last_error = exc
            print(f"  failed: {exc}", file=sys.stderr)
    raise SystemExit(f"could not fetch {name}: {last_error}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", default="data", type=Path)
    args = parser.parse_args()
    for name, spec in DATASETS.items():
        fetch(name, spec, args.data_dir)


if __name__ == "__main__":
    main()
