import os
import sys

# the smoke tests run against the in-tree extension; CANCELAB_CORE_DIR is
# set by ctest to the directory holding the built _core module
core_dir = os.environ.get("CANCELAB_CORE_DIR")
if core_dir:
    sys.path.insert(0, core_dir)
