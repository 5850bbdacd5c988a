#!/usr/bin/env python3
"""Fetch public keyphrase benchmark corpora into datasets/.

The corpora are the standard docsutf8/keys collections mirrored in the
LIAAD/KeywordExtractor-Datasets repository. They are downloaded on
demand and never vendored into this repository.

Usage:
    python scripts/fetch_datasets.py Inspec wiki20
    python scripts/fetch_datasets.py --all
    python scripts/fetch_datasets.py --list
"""

import argparse
import io
import sys
import urllib.request
import zipfile
from pathlib import Path

from mergerank.datasets import load_manifest

BASE_URL = "https://github.com/LIAAD/KeywordExtractor-Datasets/raw/master/datasets/"


def fetch(name: str, entry: dict, out_dir: Path) -> None:
    archive = entry["archive"]
    target = Path(entry["root"])
    if (target / "docsutf8").is_dir():
        print(f"{name}: already present at {target}")
        return
    url = BASE_URL + archive
    print(f"{name}: downloading {url}")
    with urllib.request.urlopen(url) as resp:
        data = resp.read()
    print(f"{name}: extracting {len(data) // 1024} KiB")
    with zipfile.ZipFile(io.BytesIO(data)) as zf:
        zf.extractall(out_dir)
    if not (target / "docsutf8").is_dir():
        # some archives nest differently; point the user at what arrived
        print(f"{name}: warning - {target}/docsutf8 not found after extraction", file=sys.stderr)
    else:
        print(f"{name}: ready at {target}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("names", nargs="*", help="dataset names from the manifest")
    parser.add_argument("--all", action="store_true", help="fetch every fetchable dataset")
    parser.add_argument("--list", action="store_true", help="list known datasets and exit")
    parser.add_argument("--out", default="datasets", help="directory to extract into")
    args = parser.parse_args()

    manifest = load_manifest()
    fetchable = {k: v for k, v in manifest.items() if "archive" in v}
    if args.list or (not args.names and not args.all):
        for name, entry in fetchable.items():
            state = "present" if (Path(entry["root"]) / "docsutf8").is_dir() else "not fetched"
            print(f"{name:20s} {entry['root']:30s} [{state}]")
        return 0

    names = list(fetchable) if args.all else args.names
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in names:
        if name not in fetchable:
            print(f"unknown dataset {name!r}; see --list", file=sys.stderr)
            return 2
        fetch(name, fetchable[name], out_dir)
    return 0


if __name__ == "__main__":
    sys.exit(main())
