# Copyright 2026 The tcx Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Timing-coherent transactor synthesis and co-simulation."""

from ._core import (
    InterfaceFsm,
    PayloadMapping,
    TcxError,
    TransactorFsm,
    compare_traces,
    complement,
    find_last_handshake_state,
    generate_transactor,
    generate_workload,
    parse_interface_spec,
    parse_payload_mapping,
    parse_transactor,
    prepare_target,
    reference_files,
    serialize_fsm,
    simulate,
    validate,
    wrap_clock_for_call,
)

__all__ = [
    "InterfaceFsm",
    "PayloadMapping",
    "TcxError",
    "TransactorFsm",
    "compare_traces",
    "complement",
    "find_last_handshake_state",
    "generate_transactor",
    "generate_workload",
    "parse_interface_spec",
    "parse_payload_mapping",
    "parse_transactor",
    "prepare_target",
    "reference_files",
    "serialize_fsm",
    "simulate",
    "validate",
    "wrap_clock_for_call",
]
