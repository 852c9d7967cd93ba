#!/usr/bin/env python3
"""Regenerate the committed instance directory under fixtures/gazi.

The directory is generated data, not source: the builder in
examsched.gazi is the single point of truth, and a test asserts the
committed files match its output byte for byte.  Run this after editing
the builder, then commit the result.
"""

from pathlib import Path

from examsched import build_gazi_instance, write_instance


def main() -> None:
    root = Path(__file__).resolve().parent.parent
    target = root / "fixtures" / "gazi"
    write_instance(build_gazi_instance(), target)
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
