# Copyright 2026 by the nlswap authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exception types raised by nlswap.

Every error carries a stable ``code`` that the command-line front end
prints as a machine-readable prefix. Each class also derives from the
builtin exception a caller would naturally expect, so that code written
against ``ValueError`` and friends keeps working.
"""


class NlswapError(Exception):
    """Base class for all nlswap errors."""

    code = 'error'


class ParameterRangeError(NlswapError, ValueError):
    """A parameter such as a noise weight lies outside its range."""

    code = 'range'


class DomainError(NlswapError, ValueError):
    """A model parameter lies outside the domain of an operation."""

    code = 'domain'


class GridDomainError(DomainError):
    """A sweep grid reaches outside the admissible X_t interval."""

    code = 'grid-domain'


class DegenerateRangeError(NlswapError, ValueError):
    """A coupler was requested with X_b >= X_t."""

    code = 'degenerate-range'


class UndefinedConditionalError(NlswapError, ValueError):
    """Conditioning on an outcome that has probability zero."""

    code = 'undefined-conditional'


class NotIsotropicError(NlswapError, ValueError):
    """A box does not lie on the PR/anti-PR segment."""

    code = 'not-isotropic'


class DegenerateSwapError(NlswapError, ValueError):
    """A swap branch has probability zero, so its box is undefined."""

    code = 'degenerate-swap'


class InvalidBoxError(NlswapError, ValueError):
    """A box violates positivity, normalization or no-signalling."""

    code = 'invalid-box'


class UnrepresentableError(NlswapError, ArithmeticError):
    """A value (typically a square root) leaves the field Q(2^(1/4))."""

    code = 'unrepresentable'


class UnclassifiableWiringError(NlswapError, LookupError):
    """No classical strategy reproduces a wiring's behaviour."""

    code = 'unclassifiable'


class ParseError(NlswapError, ValueError):
    """Malformed textual input.

    Args:
        message (str): Description of the problem.
        position (int): Zero-based character offset where parsing
            failed.
    """

    code = 'parse'

    def __init__(self, message, position):
        super().__init__('{} (at position {})'.format(message, position))
        self.position = position


class ConfigurationError(NlswapError, ValueError):
    """An ambient setting, such as the display precision, is invalid."""

    code = 'config'


class CouplerCheckError(NlswapError, ValueError):
    """A coupler failed verification against its theory's boxes."""

    code = 'coupler'
