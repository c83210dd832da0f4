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

"""Command-line front end.

Commands::

    nlswap swap --coupler 3/2,0 --ab pr --bc pr
    nlswap classify BQ 0
    nlswap sweep 1:3/2:20 --output region.csv
    nlswap wirings --output wirings.json
    nlswap verify --box iso:3/4 --coupler quantum-perfect

Exact values are always part of the output; decimals are rendered at
``--precision`` digits, which defaults to $NLSWAP_PRECISION or 12.
Negative positional values must follow ``--``, as in
``nlswap classify -- 3/2 -1/4``.
"""

import argparse
import collections
import concurrent.futures
import csv
import io
import json
import logging
import os
import sys

from .boxes import (
    BipartiteBox,
    ENTRIES,
    make_anti_pr,
    make_deterministic,
    make_isotropic,
    make_maximally_mixed,
    make_pr,
    make_pr_variant,
    verify_box,
)
from .errors import (
    ConfigurationError,
    CouplerCheckError,
    DomainError,
    GridDomainError,
    InvalidBoxError,
    NlswapError,
    ParseError,
)
from .exact import parse_scalar, Rational, TSIRELSON_BOUND
from .functionals import (
    ch_value,
    coupler_valid_on,
    genuine_box_coupler,
    make_coupler,
)
from .models import (
    classify,
    limit_values,
    minimal_xb,
    noisy_local_bounds,
    perfect_xb,
    TheoryModel,
)
from .polytope import is_local
from .swap import (
    isotropic_with_ch,
    success_probability,
    swap,
    swap_threshold,
    verify_coupler_nonsignalling,
)
from .version import __version__
from .wirings import enumerate_all_wirings, kind_histogram, strategy_for

logger = logging.getLogger(__name__)

PRECISION_ENV = 'NLSWAP_PRECISION'
DEFAULT_PRECISION = 12

SWEEP_FIELDS = (
    'x_top',
    'perfect_xb',
    'minimal_xb',
    'z_b',
    'z_t',
    'p_success_perfect',
)


# --------------------------------------------------------------------
# Configuration
# --------------------------------------------------------------------


def resolve_precision(flag_value, environ=None):
    """Return the display precision.

    ``--precision`` wins over $NLSWAP_PRECISION, which wins over the
    default.

    Raises:
        nlswap.errors.ConfigurationError: The value is not a
            non-negative integer.
    """

    environ = os.environ if environ is None else environ

    if flag_value is not None:
        raw, source = flag_value, '--precision'
    elif environ.get(PRECISION_ENV):
        raw, source = environ[PRECISION_ENV], PRECISION_ENV
    else:
        return DEFAULT_PRECISION

    try:
        precision = int(raw)
    except ValueError:
        precision = -1

    if precision < 0:
        raise ConfigurationError(
            '{} must be a non-negative integer, got {!r}'.format(source, raw)
        )

    return precision


# --------------------------------------------------------------------
# Argument parsing
# --------------------------------------------------------------------


def _parse_at(text, offset):
    try:
        return parse_scalar(text)
    except ParseError as ex:
        raise ParseError(str(ex).rsplit(' (at', 1)[0], ex.position + offset)


def _quantum_perfect():
    return make_coupler(TSIRELSON_BOUND, perfect_xb(TSIRELSON_BOUND))


def _quantum_minimal():
    return make_coupler(TSIRELSON_BOUND, minimal_xb(TSIRELSON_BOUND))


COUPLER_PRESETS = collections.OrderedDict(
    [
        ('genuine', genuine_box_coupler),
        ('quantum-perfect', _quantum_perfect),
        ('quantum-minimal', _quantum_minimal),
    ]
)


def parse_coupler(text):
    """Parse ``X_t,X_b`` or a preset name into a Coupler.

    Raises:
        nlswap.errors.ParseError: The coupler text is malformed.
        nlswap.errors.DegenerateRangeError: X_b >= X_t.
    """

    preset = COUPLER_PRESETS.get(text.strip())
    if preset is not None:
        return preset()

    if text.count(',') != 1:
        raise ParseError(
            'coupler must be "X_t,X_b" or one of {}'.format(
                ', '.join(COUPLER_PRESETS)
            ),
            0,
        )

    top, bottom = text.split(',')
    return make_coupler(
        _parse_at(top, 0), _parse_at(bottom, len(top) + 1)
    )


def _bits(text, count, offset):
    if len(text) != count or any(ch not in '01' for ch in text):
        raise ParseError(
            'expected {} bits, got {!r}'.format(count, text), offset
        )

    return [int(ch) for ch in text]


def _load_box_file(path):
    with io.open(path, 'r', encoding='utf-8') as f:
        record = json.load(f)

    try:
        return BipartiteBox.from_dict(record)
    except (ValueError, KeyError, TypeError) as ex:
        raise InvalidBoxError('{}: {}'.format(path, ex))


def parse_box(text, coupler=None):
    """Parse a box spec.

    Specs are ``pr``, ``anti-pr``, ``mixed``, ``pr:ABG`` (PR variant
    bits), ``det:ABGD`` (deterministic bits), ``iso:EXPR`` (PR weight),
    ``iso:threshold`` (the isotropic box at the swap threshold of
    *coupler*) and ``file:PATH`` (JSON box record).
    """

    name, sep, arg = text.partition(':')
    offset = len(name) + 1

    if not sep:
        simple = {
            'pr': make_pr,
            'anti-pr': make_anti_pr,
            'mixed': make_maximally_mixed,
        }
        try:
            return simple[name]()
        except KeyError:
            raise ParseError('unknown box {!r}'.format(text), 0)

    if name == 'pr':
        return make_pr_variant(*_bits(arg, 3, offset))

    if name == 'det':
        return make_deterministic(*_bits(arg, 4, offset))

    if name == 'iso':
        if arg == 'threshold':
            if coupler is None:
                raise ParseError('iso:threshold needs a coupler', offset)

            return make_isotropic(isotropic_with_ch(swap_threshold(coupler)))

        return make_isotropic(_parse_at(arg, offset))

    if name == 'file':
        return _load_box_file(arg)

    raise ParseError('unknown box kind {!r}'.format(name), 0)


def parse_grid(text):
    """Parse ``start:stop:count`` or a comma-separated list of X_t.

    A range yields *count* evenly spaced points in (start, stop].

    Raises:
        nlswap.errors.ParseError: The grid is malformed.
        nlswap.errors.GridDomainError: A point is outside (1, 3/2].
    """

    if ':' in text:
        parts = text.split(':')
        if len(parts) != 3:
            raise ParseError('range grid must be start:stop:count', 0)

        start = _parse_at(parts[0], 0)
        stop = _parse_at(parts[1], len(parts[0]) + 1)

        try:
            count = int(parts[2])
        except ValueError:
            count = 0

        if count < 1:
            raise ParseError(
                'grid count must be a positive integer',
                len(parts[0]) + len(parts[1]) + 2,
            )

        step = (stop - start) / count
        points = [start + step * k for k in range(1, count + 1)]
    else:
        points = []
        offset = 0
        for item in text.split(','):
            points.append(_parse_at(item, offset))
            offset += len(item) + 1

    for point in points:
        if point <= 1 or point > Rational(3, 2):
            raise GridDomainError(
                'grid point {} is outside (1, 3/2]'.format(point)
            )

    return points


# --------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------


def _decimal(value, precision):
    # Positional notation; str() switches to exponents near zero
    return '{:f}'.format(value.to_decimal(precision))


def _render(value, precision):
    return '{} ({})'.format(value, _decimal(value, precision))


def _render_table(box, precision):
    lines = []
    for (a, b, x, y), p in zip(ENTRIES, box.table):
        lines.append(
            '  P({}{}|{}{}) = {}'.format(a, b, x, y, _render(p, precision))
        )

    return '\n'.join(lines)


def _exact_and_decimal(value, precision):
    return {
        'exact': value.serialize(),
        'decimal': _decimal(value, precision),
    }


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
        return

    with io.open(output, 'w', encoding='utf-8', newline='') as f:
        f.write(text)


# --------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------


def cmd_swap(args, precision):
    coupler = parse_coupler(args.coupler)
    box_ab = parse_box(args.ab, coupler)
    box_bc = parse_box(args.bc, coupler)

    outcome = swap(coupler, box_ab, box_bc)

    if args.format == 'json':
        record = outcome.to_dict()
        record['coupler'] = coupler.to_dict()
        record['decimal'] = {
            name: _decimal(getattr(outcome, name), precision)
            for name in ('p_success', 'ch_success', 'ch_failure')
        }
        _emit(json.dumps(record, sort_keys=True, indent=2) + '\n', args.output)
        return 0

    lines = [
        'coupler: X_t = {}, X_b = {}'.format(coupler.x_top, coupler.x_bottom),
        'p_success: ' + _render(outcome.p_success, precision),
        'ch_success: ' + _render(outcome.ch_success, precision),
        'ch_failure: ' + _render(outcome.ch_failure, precision),
        'success box P_S(ac|xz):',
        _render_table(outcome.success_box, precision),
        'failure box P_f(ac|xz):',
        _render_table(outcome.failure_box, precision),
    ]
    _emit('\n'.join(lines) + '\n', args.output)
    return 0


def cmd_classify(args, precision):
    x_top = parse_scalar(args.x_top)
    x_bottom = parse_scalar(args.x_bottom)
    result = classify(x_top, x_bottom)

    if args.format == 'json':
        record = {
            'x_top': x_top.serialize(),
            'x_bottom': x_bottom.serialize(),
            'class': result.value,
            'swaps': result.swaps,
        }
        _emit(json.dumps(record, sort_keys=True) + '\n', args.output)
    else:
        _emit(result.value + '\n', args.output)

    return 0


class SweepRow(
    collections.namedtuple(
        'SweepRow', SWEEP_FIELDS + ('marker',)
    )
):
    """One X_t point of the coupler region."""

    __slots__ = ()

    def values(self):
        return [getattr(self, name) for name in SWEEP_FIELDS]


def _perfect_success(x_top, x_bottom, xi):
    box = make_isotropic(xi)
    return success_probability(make_coupler(x_top, x_bottom), box, box)


def sweep_row(x_top, marker=''):
    """Compute the region boundaries and noisy floors at X_t."""

    perfect = perfect_xb(x_top)
    xi = isotropic_with_ch(x_top)
    z_b, z_t = noisy_local_bounds(xi)

    return SweepRow(
        x_top,
        perfect,
        minimal_xb(x_top),
        z_b,
        z_t,
        _perfect_success(x_top, perfect, xi),
        marker,
    )


def limit_row():
    """Return the X_t -> 1 row, where the perfect and minimal couplers
    meet at X_b = 1/4."""

    x_top = parse_scalar('1')
    perfect, minimal = limit_values()
    xi = isotropic_with_ch(x_top)
    z_b, z_t = noisy_local_bounds(xi)

    return SweepRow(
        x_top,
        perfect,
        minimal,
        z_b,
        z_t,
        _perfect_success(x_top, perfect, xi),
        'cross-limit',
    )


def sweep(points, workers=None):
    """Return the sweep rows for *points*, plus the marker rows.

    Points are sorted and deduplicated; Tsirelson's bound is always
    included (marker ``dot``) and the X_t -> 1 limit row comes first.

    Raises:
        nlswap.errors.ConfigurationError: *workers* is less than 1.
    """

    if workers is not None and workers < 1:
        raise ConfigurationError(
            'workers must be at least 1, got {}'.format(workers)
        )

    unique = sorted(set(points) | {TSIRELSON_BOUND})
    markers = ['dot' if p == TSIRELSON_BOUND else '' for p in unique]

    logger.debug('sweep: %d grid points', len(unique))

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(sweep_row, unique, markers))

    return [limit_row()] + rows


def _sweep_csv(rows, precision):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')

    writer.writerow(
        list(SWEEP_FIELDS)
        + [name + '_exact' for name in SWEEP_FIELDS]
        + ['marker']
    )
    for row in rows:
        values = row.values()
        writer.writerow(
            [_decimal(v, precision) for v in values]
            + [v.serialize() for v in values]
            + [row.marker]
        )

    return buffer.getvalue()


def _sweep_json(rows, precision):
    records = []
    for row in rows:
        record = {
            name: _exact_and_decimal(value, precision)
            for name, value in zip(SWEEP_FIELDS, row.values())
        }
        record['marker'] = row.marker
        records.append(record)

    return json.dumps(records, sort_keys=True, indent=2) + '\n'


def cmd_sweep(args, precision):
    rows = sweep(parse_grid(args.grid), workers=args.workers)

    if args.format == 'json':
        text = _sweep_json(rows, precision)
    else:
        text = _sweep_csv(rows, precision)

    _emit(text, args.output)
    return 0


def wirings_document():
    """Return the JSON document listing all extremal wirings."""

    records = []
    for wiring in enumerate_all_wirings():
        record = wiring.to_dict()
        record['strategy'] = strategy_for(wiring).describe()
        records.append(record)

    return json.dumps(records, sort_keys=True, indent=2) + '\n'


def cmd_wirings(args, precision):
    wirings = enumerate_all_wirings()

    if args.output is not None:
        _emit(wirings_document(), args.output)

    lines = [
        '{}: {}'.format(kind.value, count)
        for kind, count in kind_histogram(wirings).items()
    ]
    lines.append('total: {}'.format(len(wirings)))
    sys.stdout.write('\n'.join(lines) + '\n')
    return 0


def _verify_coupler(coupler):
    lines = ['coupler {},{}:'.format(coupler.x_top, coupler.x_bottom)]

    try:
        model = TheoryModel(coupler.x_top, coupler.x_bottom)
    except DomainError as ex:
        lines.append('  model: ' + str(ex))
        return lines, str(ex)

    genuine = model.genuine_nonlocal()
    valid_on = coupler_valid_on(coupler, model.genuine_boxes())
    nonsignalling = verify_coupler_nonsignalling(coupler, genuine, genuine)

    lines.extend(
        [
            '  class: ' + model.classification.value,
            '  valid on genuine boxes: {}'.format(valid_on),
            '  no-signalling: {}'.format(nonsignalling),
        ]
    )

    problems = []
    if not valid_on:
        problems.append('output is not a valid box on the genuine boxes')
    if not nonsignalling:
        problems.append('action is signalling on the genuine boxes')

    return lines, '; '.join(problems) or None


def cmd_verify(args, precision):
    if not args.box and args.coupler is None:
        raise ParseError('verify needs --box or --coupler', 0)

    coupler = None
    problem = None
    lines = []

    if args.coupler is not None:
        coupler = parse_coupler(args.coupler)
        coupler_lines, problem = _verify_coupler(coupler)
        lines.extend(coupler_lines)

    invalid = []
    for spec in args.box:
        box = parse_box(spec, coupler)
        report = verify_box(box)

        lines.append('box {}:'.format(spec))
        lines.append('  nonneg: {}'.format(report.nonneg))
        lines.append('  normalized: {}'.format(report.normalized))
        lines.append('  nonsignalling: {}'.format(report.nonsignalling))

        if report.valid:
            lines.append('  ch: ' + _render(ch_value(box), precision))
            if all(p.is_rational() for p in box.table):
                lines.append('  local: {}'.format(is_local(box)))
        else:
            invalid.append(spec)

    _emit('\n'.join(lines) + '\n', args.output)

    if invalid:
        raise InvalidBoxError('not a valid box: ' + ', '.join(invalid))

    if problem:
        raise CouplerCheckError(
            'coupler {},{} failed: {}'.format(
                coupler.x_top, coupler.x_bottom, problem
            )
        )

    return 0


# --------------------------------------------------------------------
# Entry point
# --------------------------------------------------------------------


def _common_options():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        '--precision',
        default=None,
        help='decimal digits for rendered values (default: ${} or {})'.format(
            PRECISION_ENV, DEFAULT_PRECISION
        ),
    )
    parent.add_argument(
        '--format',
        choices=('text', 'csv', 'json'),
        default=None,
        help='output format',
    )
    parent.add_argument('--output', default=None, help='write to this file')
    parent.add_argument(
        '--verbose', action='store_true', help='log progress to stderr'
    )
    return parent


def build_parser():
    common = _common_options()

    parser = argparse.ArgumentParser(
        prog='nlswap',
        description='Exact non-locality swapping with generalized couplers.',
    )
    parser.add_argument(
        '--version', action='version', version='%(prog)s ' + __version__
    )
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    swap_parser = commands.add_parser(
        'swap', parents=[common], help='swap two boxes with a coupler'
    )
    swap_parser.add_argument('--coupler', required=True)
    swap_parser.add_argument('--ab', required=True, help='Alice-Bob box')
    swap_parser.add_argument('--bc', required=True, help='Bob-Charlie box')
    swap_parser.set_defaults(handler=cmd_swap)

    classify_parser = commands.add_parser(
        'classify', parents=[common], help='classify a coupler (X_t, X_b)'
    )
    classify_parser.add_argument('x_top')
    classify_parser.add_argument('x_bottom')
    classify_parser.set_defaults(handler=cmd_classify)

    sweep_parser = commands.add_parser(
        'sweep', parents=[common], help='tabulate the coupler region'
    )
    sweep_parser.add_argument(
        'grid', help='start:stop:count, or a comma-separated list of X_t'
    )
    sweep_parser.add_argument('--workers', type=int, default=None)
    sweep_parser.set_defaults(handler=cmd_sweep)

    wirings_parser = commands.add_parser(
        'wirings', parents=[common], help='enumerate the 82 wirings'
    )
    wirings_parser.set_defaults(handler=cmd_wirings)

    verify_parser = commands.add_parser(
        'verify', parents=[common], help='check boxes and couplers'
    )
    verify_parser.add_argument('--box', action='append', default=[])
    verify_parser.add_argument('--coupler', default=None)
    verify_parser.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )

    try:
        precision = resolve_precision(args.precision)
        return args.handler(args, precision)
    except NlswapError as ex:
        sys.stderr.write('error[{}]: {}\n'.format(ex.code, ex))
    except OSError as ex:
        sys.stderr.write('error[io]: {}\n'.format(ex))
    except json.JSONDecodeError as ex:
        sys.stderr.write('error[parse]: {}\n'.format(ex))

    return 1
