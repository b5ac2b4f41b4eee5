# Copyright 2026 The glottkit Authors
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

"""Glottal inverse filtering: IAIF, GFM-IAIF and IOP-IAIF with voice quality features."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import (
    AnalysisConfig,
    GlottkitError,
    __version__,
    evaluate_json as _evaluate_json,
)

METHODS = ("iaif", "gfm-iaif", "iop-iaif")


def evaluate(manifest, methods=METHODS, config=None):
    """Run the effort discrimination study on a manifest and return the report as a dict."""
    if isinstance(methods, str):
        methods = [methods]
    return _json.loads(_evaluate_json(str(manifest), list(methods), config or AnalysisConfig()))


__all__ = ["AnalysisConfig", "GlottkitError", "METHODS", "evaluate", "__version__"]
