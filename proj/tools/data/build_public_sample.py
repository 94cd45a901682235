#!/usr/bin/env python3
"""Collect the SMILES datasets bundled with the datamol wheel into one file.

    pip download datamol==0.12.5 --no-deps -d /tmp/dm
    python3 tools/data/build_public_sample.py /tmp/dm/datamol-0.12.5-py3-none-any.whl data/public.smi

Multi-component entries keep their largest component (by heavy-atom
characters). Duplicates are dropped by exact SMILES, first one wins.
Chirality marks are kept; the tokenizer ignores them.
"""

import argparse
import io
import re
import zipfile

import pandas as pd

SOURCES = [
    ("chembl_approved_drugs.parquet", "parquet", "chembl_approved"),
    ("chembl_drugs.csv", "csv", "chembl_drugs"),
    ("chembl_samples.csv", "csv", "chembl_samples"),
    ("freesolv.csv", "csv", "freesolv"),
    ("solubility.train.sdf", "sdf", "solubility_train"),
    ("solubility.test.sdf", "sdf", "solubility_test"),
]

HEAVY = re.compile(r"Cl|Br|[BCNOSPFI]|[bcnosp]|\[[^\]]*\]")


def heavy_atoms(smiles):
    return sum(1 for m in HEAVY.findall(smiles) if not m.startswith("[H"))


def largest_component(smiles):
    return max(smiles.split("."), key=heavy_atoms)


def sdf_smiles(text):
    lines = text.splitlines()
    return [lines[i + 1].strip() for i, line in enumerate(lines)
            if line.startswith(">") and "<smiles>" in line]


def read_source(wheel, name, kind):
    data = wheel.read("datamol/data/" + name)
    if kind == "parquet":
        return pd.read_parquet(io.BytesIO(data))["smiles"].dropna().tolist()
    if kind == "csv":
        return pd.read_csv(io.BytesIO(data))["smiles"].dropna().tolist()
    return sdf_smiles(data.decode())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("wheel")
    ap.add_argument("out")
    args = ap.parse_args()

    seen = set()
    rows = []
    with zipfile.ZipFile(args.wheel) as wheel:
        for name, kind, tag in SOURCES:
            for i, smi in enumerate(read_source(wheel, name, kind)):
                smi = largest_component(smi.strip())
                if not smi or smi in seen:
                    continue
                seen.add(smi)
                rows.append(f"{smi} {tag}_{i + 1}")

    with open(args.out, "w") as f:
        f.write("# SMILES from the datasets bundled in datamol 0.12.5 (Apache-2.0);\n")
        f.write("# ChEMBL-derived rows are CC BY-SA 3.0. Built by\n")
        f.write("# tools/data/build_public_sample.py.\n")
        f.write("\n".join(rows) + "\n")
    print(f"{len(rows)} molecules -> {args.out}")


if __name__ == "__main__":
    main()
