# Copyright 2025 The gmac-wiretap-regions Authors
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

"""Exceptions raised by the toolkit"""


class GmacwtError(Exception):
    "Base class for toolkit errors."


class DomainError(GmacwtError, ValueError):
    "Raised when an argument lies outside the domain of an operation."


class DimensionMismatchError(DomainError):
    "Raised when a rate vector does not match the number of users."


class UnsupportedSizeError(GmacwtError):
    "Raised when a combinatorial routine is asked for too many users."


class SizeCapError(GmacwtError):
    "Raised when an enumeration would exceed its configured cap."

    def __init__(self, message, advice=None):
        super().__init__(message if advice is None else f"{message} ({advice})")
        self.advice = advice


class InfeasibleSplitError(GmacwtError):
    "Raised when no rate split satisfies the superposition constraints."

    def __init__(self, message, violated=None):
        super().__init__(message)
        self.violated = violated


class OracleConsistencyError(GmacwtError):
    "Raised when the two equivocation computations disagree."
