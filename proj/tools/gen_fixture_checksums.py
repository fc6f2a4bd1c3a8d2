#!/usr/bin/env python3
"""Regenerate data/fixtures/CHECKSUMS (FNV-1a 64 over file bytes).

Run after any intentional fixture edit:

    python3 tools/gen_fixture_checksums.py
"""
from pathlib import Path

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "data" / "fixtures"


def fnv1a64(data: bytes) -> int:
    h = 14695981039346656037
    for byte in data:
        h ^= byte
        h = (h * 1099511628211) & 0xFFFFFFFFFFFFFFFF
    return h


def main() -> None:
    lines = ["# FNV-1a 64 digests of the fixture files; see tools/gen_fixture_checksums.py"]
    for path in sorted(FIXTURE_DIR.iterdir()):
        if path.name == "CHECKSUMS" or path.name.startswith("."):
            continue
        digest = fnv1a64(path.read_bytes())
        lines.append(f"{digest:016x}  {path.name}")
    (FIXTURE_DIR / "CHECKSUMS").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {FIXTURE_DIR / 'CHECKSUMS'} ({len(lines) - 1} entries)")


if __name__ == "__main__":
    main()
