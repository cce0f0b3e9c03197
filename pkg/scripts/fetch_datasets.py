#!/usr/bin/env python3
"""Download the real-world graphs used by the acceptance suite and write
them as plain edge lists into a data directory (default ``datasets/``).

SNAP files arrive gzipped and already in edge-list form. Polbooks arrives as
GML inside a zip and is converted with networkx.

    python scripts/fetch_datasets.py [--dest DIR] [--only NAME ...]
"""

from __future__ import annotations

import argparse
import gzip
import io
import shutil
import sys
import urllib.request
import zipfile
from pathlib import Path

SNAP = "https://snap.stanford.edu/data/"
SOURCES = {
    "hepth": SNAP + "ca-HepTh.txt.gz",
    "condmat": SNAP + "ca-CondMat.txt.gz",
    "brightkite": SNAP + "loc-brightkite_edges.txt.gz",
    "enron": SNAP + "email-Enron.txt.gz",
    "polbooks": "http://www-personal.umich.edu/~mejn/netdata/polbooks.zip",
}


def fetch(url: str) -> bytes:
    with urllib.request.urlopen(url, timeout=60) as resp:
        return resp.read()


def write_snap(raw: bytes, out: Path) -> None:
    with gzip.open(io.BytesIO(raw)) as src, open(out, "wb") as dst:
        shutil.copyfileobj(src, dst)


def write_polbooks(raw: bytes, out: Path) -> None:
    import networkx as nx

    with zipfile.ZipFile(io.BytesIO(raw)) as zf:
        text = zf.read("polbooks.gml").decode()
    g = nx.parse_gml(text, label="id")
    with open(out, "w") as fh:
        fh.write(f"# polbooks: {g.number_of_nodes()} nodes, {g.number_of_edges()} edges\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dest", default=str(Path(__file__).resolve().parents[1] / "datasets"))
    ap.add_argument("--only", nargs="*", choices=sorted(SOURCES), default=sorted(SOURCES))
    args = ap.parse_args(argv)

    dest = Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in args.only:
        out = dest / f"{name}.txt"
        if out.exists():
            print(f"{name}: already present at {out}")
            continue
        try:
            raw = fetch(SOURCES[name])
        except OSError as e:
            print(f"{name}: download failed ({e})", file=sys.stderr)
            failed += 1
            continue
        (write_polbooks if name == "polbooks" else write_snap)(raw, out)
        print(f"{name}: wrote {out}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
