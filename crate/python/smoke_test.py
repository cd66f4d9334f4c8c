"""Smoke test for the Python extension.

Uses an installed `ssorient` module if there is one, otherwise the
library from `cargo build --release -p ssorient-py`.
"""

import importlib
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[1]

INSTANCE = """
p = 179
curve.a = 178
curve.b = 0
endo.kind = quaternion
endo.quat = 0 3/2 0 1/2
"""


def load():
    try:
        return importlib.import_module("ssorient")
    except ImportError:
        pass
    built = ROOT / "target" / "release" / "libssorient.so"
    if not built.exists():
        sys.exit(f"build the extension first: cargo build --release -p ssorient-py ({built} missing)")
    tmp = pathlib.Path(tempfile.mkdtemp())
    shutil.copy(built, tmp / "ssorient.so")
    sys.path.insert(0, str(tmp))
    return importlib.import_module("ssorient")


def main():
    m = load()
    assert m.class_number(-47) == 5
    assert m.class_number(-4) == 1
    y, z = m.cornacchia(1, 13)
    assert y * y + z * z == 13
    assert m.cornacchia(1, 3) is None

    (r, quat), = m.orient_1728(-47, 179)
    assert r == 1, r
    assert quat in ("0 3/2 0 1/2", "0 3/2 0 -1/2", "0 -3/2 0 1/2", "0 -3/2 0 -1/2"), quat

    js = m.find_path(INSTANCE, bound=50)
    assert js[0] == "117" and js[-1] == "117", js

    code, out, _ = m.run_cli(["orient-1728", "--p", "179", "--disc", "-47"])
    assert code == 0 and "r = 1" in out, out
    code, _, err = m.run_cli(["orient-1728", "--p", "180", "--disc", "-47"])
    assert code != 0, err

    try:
        m.class_number(-5)
    except ValueError:
        pass
    else:
        raise AssertionError("-5 is not a discriminant")
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
