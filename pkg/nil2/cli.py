"""Command line interface.

    nil2 info FILE --group NAME
    nil2 dominion FILE --group NAME --subgroup "w1; w2" [--contains WORD]
    nil2 closed FILE --group NAME [--method auto|enumerate|search]
    nil2 amalbase FILE --group NAME
    nil2 roots FILE --group NAME --elements "w1; w2" --orders "n1,n2"
    nil2 witness FILE --group NAME --x WORD --y WORD --n N [--check]
    nil2 corpus

FILE is a group file or the word ``builtins``; group names not defined in
the file are read as builtin references such as ``cyclic(6)``.

Exit codes: 0 success (whatever the verdict), 1 corpus failures, 2 input
errors, 3 Unknown verdicts under ``--strict``.
"""
import argparse
import json
import logging
import sys
import time
from math import inf

from . import presentation
from .closure import (can_adjoin_roots, check_pair, is_absolutely_closed, is_strong_amalg_base,
                      necessary_center_cyclic, search_budget, sufficient_cyclic_quotient)
from .corpus import run_corpus
from .dominion import dominion, dominion_contributions, dominion_gap
from .nil2core import group_invariants, subgroup_generated
from .witness import verify_nonclosure_certificate

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_UNKNOWN = 3


class Report(object):
    """Structured result of one invocation, printable as JSON or text."""
    def __init__(self, command, argv, fmt='text'):
        self.fmt = fmt
        self.data = {'schema_version': SCHEMA_VERSION, 'command': command, 'argv': list(argv)}
        self.lines = []

    def add(self, key, value, text=None):
        self.data[key] = value
        if text is not None:
            self.lines.append(text)

    def text(self, line):
        self.lines.append(line)

    def to_json(self):
        return json.dumps(self.data, sort_keys=True, indent=2)

    def to_text(self):
        return "\n".join(self.lines)

    def render(self):
        return self.to_json() if self.fmt == 'json' else self.to_text()


def _number(x):
    return 'infinite' if x == inf else int(x)


def _quotient(Q):
    return {'invariant_factors': [int(d) for d in Q.invariant_factors], 'free_rank': Q.free_rank,
            'structure': Q.describe()}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=('text', 'json'), default='text')
    common.add_argument('--strict', action='store_true', help="exit with code 3 on Unknown verdicts")
    common.add_argument('--timing', action='store_true', help="include wall-clock seconds in the report")
    common.add_argument('-v', '--verbose', action='count', default=0)

    parser = argparse.ArgumentParser(prog='nil2', description="Exact computations in class-2 nilpotent groups.")
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    def group_command(name, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument('file', metavar='FILE')
        p.add_argument('--group', required=True)
        return p

    group_command('info', "order, exponent and structure invariants")
    p = group_command('dominion', "dominion of a subgroup")
    p.add_argument('--subgroup', required=True, help="generators separated by ';'")
    p.add_argument('--contains', help="word to test for membership")
    p = group_command('closed', "absolute closure verdict")
    p.add_argument('--method', choices=('auto', 'enumerate', 'search'), default='auto')
    p.add_argument('--radius', type=int)
    p.add_argument('--max-checks', type=int)
    group_command('amalbase', "strong amalgamation base verdict")
    p = group_command('roots', "whether roots can be adjoined in an overgroup")
    p.add_argument('--elements', required=True, help="elements separated by ';'")
    p.add_argument('--orders', required=True, help="root orders separated by ','")
    p = group_command('witness', "build and verify the root extension for a triple")
    p.add_argument('--x', required=True)
    p.add_argument('--y', required=True)
    p.add_argument('--n', required=True, type=int)
    p.add_argument('--check', action='store_true', help="also report check_pair on the triple")
    sub.add_parser('corpus', parents=[common], help="run the regression corpus")
    return parser


def load_group(args):
    if args.file == 'builtins':
        gf = presentation.GroupFile()
    else:
        gf = presentation.load(args.file)
    return gf.group(args.group)


def _summarize_group(report, G):
    report.add('group', {
        'name': G.name,
        'generators': list(G.gen_names),
        'relators': list(G.relator_words),
        'order': _number(G.order),
    }, "group %s: order %s" % (G.name, _number(G.order)))


def cmd_info(args, report):
    G = load_group(args)
    _summarize_group(report, G)
    inv = group_invariants(G)
    info = {
        'exponent': _number(inv.exponent),
        'abelianization': _quotient(inv.abelianization),
        'commutator_subgroup': _quotient(inv.derived_quotient),
        'center_mod_commutator': _quotient(inv.center_mod_commutator),
        'center_generators': [g.word() for g in inv.center.generators],
        'is_abelian': inv.is_abelian,
        'sufficient_cyclic_quotient': sufficient_cyclic_quotient(G),
        'necessary_center_cyclic': necessary_center_cyclic(G),
        'presentation': G.presentation_text(),
    }
    report.add('info', info)
    report.text("exponent: %s" % info['exponent'])
    report.text("abelianization: %s" % inv.abelianization.describe())
    report.text("commutator subgroup: %s" % inv.derived_quotient.describe())
    report.text("Z(G)/G': %s" % inv.center_mod_commutator.describe())
    return EXIT_OK


def cmd_dominion(args, report):
    G = load_group(args)
    _summarize_group(report, G)
    H = subgroup_generated(G, presentation.parse_word_list(args.subgroup))
    D = dominion(G, H)
    gap = dominion_gap(G, H)
    result = {
        'subgroup': [g.word() for g in H.generators],
        'generators': [g.word() for g in D.generators],
        'gap': _quotient(gap),
        'contributions': [{'d': c.d, 'generators': [g.word() for g in c.generators]}
                          for c in dominion_contributions(G, H)],
    }
    report.text("dominion generators: %s" % ", ".join(result['generators']))
    report.text("gap: %s" % gap.describe())
    if args.contains:
        w = G.element(args.contains)
        result['element'] = w.word()
        result['contains'] = D.contains(w)
        result['in_subgroup'] = H.contains(w)
        report.text("contains %s: %s (in subgroup: %s)" % (w.word(), result['contains'], result['in_subgroup']))
    report.add('dominion', result)
    return EXIT_OK


def _verdict_exit(args, verdict):
    if verdict.holds is None and args.strict:
        return EXIT_UNKNOWN
    return EXIT_OK


def _verdict_text(report, verdict):
    line = "verdict: %s" % verdict.label
    if verdict.method:
        line += " (%s)" % verdict.method
    report.text(line)
    if verdict.certificate is not None:
        report.text("certificate: %s" % ", ".join("%s=%s" % kv for kv in sorted(verdict.certificate.as_dict().items())))
    if verdict.reason:
        report.text("reason: %s" % verdict.reason)


def cmd_closed(args, report):
    G = load_group(args)
    _summarize_group(report, G)
    budget = search_budget(radius=args.radius, max_checks=args.max_checks)
    verdict = is_absolutely_closed(G, method=args.method, budget=budget)
    report.add('verdict', verdict.as_dict())
    _verdict_text(report, verdict)
    return _verdict_exit(args, verdict)


def cmd_amalbase(args, report):
    G = load_group(args)
    _summarize_group(report, G)
    verdict = is_strong_amalg_base(G)
    report.add('verdict', verdict.as_dict())
    _verdict_text(report, verdict)
    return _verdict_exit(args, verdict)


def cmd_roots(args, report):
    G = load_group(args)
    _summarize_group(report, G)
    elements = [G.element(w) for w in presentation.parse_word_list(args.elements)]
    orders = presentation.parse_int_list(args.orders)
    result = can_adjoin_roots(G, elements, orders)
    report.add('roots', dict(result.as_dict(), elements=[g.word() for g in elements], orders=orders))
    report.text("roots can be adjoined: %s" % result.possible)
    if not result.possible:
        report.text("refuting c: %s, y: %s" % (result.c, ", ".join(y.word() for y in result.roots)))
    return EXIT_OK


def cmd_witness(args, report):
    G = load_group(args)
    _summarize_group(report, G)
    x, y = G.element(args.x), G.element(args.y)
    ext = verify_nonclosure_certificate(G, x, y, args.n)
    result = ext.as_dict()
    result.update({'x': x.word(), 'y': y.word(), 'n': args.n, 'certifies_nonclosure': ext.certifies_nonclosure})
    if args.check:
        result['pair'] = check_pair(G, x, y, args.n).as_dict()
    report.add('witness', result)
    report.text("extension order: %s" % result['order'])
    report.text("embeds: %s" % ext.embeds)
    report.text("%s in dominion: %s, in G: %s" % (ext.commutator_power.word(), ext.commutator_power_in_dominion,
                                                  ext.commutator_power_in_G))
    return EXIT_OK


def cmd_corpus(args, report):
    outcomes = run_corpus()
    rows = []
    for o in outcomes:
        row = {'name': o.name, 'passed': o.passed}
        if o.message:
            row['message'] = o.message
        if args.timing:
            row['seconds'] = round(o.seconds, 3)
        rows.append(row)
        report.text("%-45s %s%s" % (o.name, 'pass' if o.passed else 'FAIL',
                                     (" " + o.message) if o.message else ""))
    failed = sum(1 for o in outcomes if not o.passed)
    report.add('cases', rows)
    report.add('failed', failed, "%d cases, %d failed" % (len(outcomes), failed))
    return EXIT_FAILED if failed else EXIT_OK


commands = {
    'info': cmd_info,
    'dominion': cmd_dominion,
    'closed': cmd_closed,
    'amalbase': cmd_amalbase,
    'roots': cmd_roots,
    'witness': cmd_witness,
    'corpus': cmd_corpus,
}


def run_cli(argv):
    """Run one command; returns (exit_code, Report). Never raises on input errors."""
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        report = Report(None, argv)
        report.add('error', 'invalid arguments', "error: invalid arguments")
        return (exc.code if isinstance(exc.code, int) else EXIT_INPUT_ERROR), report
    report = Report(args.command, argv, fmt=args.format)
    start = time.perf_counter()
    try:
        code = commands[args.command](args, report)
    except (ValueError, OSError) as exc:
        logger.debug("%s failed", args.command, exc_info=True)
        report.add('error', str(exc), "error: %s" % exc)
        return EXIT_INPUT_ERROR, report
    if args.timing:
        seconds = time.perf_counter() - start
        report.add('seconds', round(seconds, 3), "time: %.3fs" % seconds)
    return code, report


def _log_level(argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument('-v', '--verbose', action='count', default=0)
    verbose = pre.parse_known_args(argv)[0].verbose
    return {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    logging.basicConfig(stream=sys.stderr, level=_log_level(argv), format='%(levelname)s %(name)s: %(message)s')
    code, report = run_cli(argv)
    if 'error' in report.data:
        print(report.data['error'], file=sys.stderr)
    else:
        print(report.render())
    sys.exit(code)
