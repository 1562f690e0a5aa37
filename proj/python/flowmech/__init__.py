# Copyright 2026 The Flowmech Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python bindings for the flowmech solvers."""

import json as _json

from ._flowmech import *  # noqa: F401,F403
from ._flowmech import run_cli as _run_cli


def cli(*args):
    """Runs a command line and returns (exit_code, parsed_stdout_or_text, stderr)."""
    code, out, err = _run_cli([str(a) for a in args])
    try:
        parsed = _json.loads(out) if out else None
    except ValueError:
        parsed = out
    return code, parsed, err
