# -*- coding: utf-8 -*-
"""
Sample, evaluate and check exchangeable trait allocations.

subcommands:
  sample     draw allocations of [n] from a model
  prob       probability of an allocation string
  check      run the invariant suites on a model
  graph      edge lists and growth curves of the vertex popularity model
  enumerate  dump the exact probability table of a model at horizon n

A model is either a JSON file (keys theta, dust_rates, constraint, or one of
eppf / evpf) or the name of a canned model (model-a, model-b, eppf-example,
vertex-example).
"""
import json
import logging
import sys
from argparse import ArgumentParser, RawDescriptionHelpFormatter
from pathlib import Path

import pandas

import traitalloc.defaults
from traitalloc import testmodels
from traitalloc.checks import build_suite, run_checks
from traitalloc.config import RunConfig, load_model
from traitalloc.constants import (EXIT_CHECK_FAILED, EXIT_OK,
                                  EXIT_RETRY_EXHAUSTED, EXIT_VALIDATION)
from traitalloc.exceptions import (ConfigError, RetryExhaustedError,
                                   ValidationError)
from traitalloc.graph import (Multigraph, VertexWeights, alloc_to_graph,
                              cfm_edges, draw_edges, growth_curve, variants)
from traitalloc.models import ConstraintSet, TruncationCaps
from traitalloc.oracle import enumerate_support, oracle_prob_frequency
from traitalloc.output import (formats, parse_alloc, write_allocations,
                               write_frame, write_graph, write_table)
from traitalloc.prob import cetpf_prob, etpf_prob
from traitalloc.sample import RngState, sample_constrained
from traitalloc.utils import open_output

logger = logging.getLogger('trait-alloc')


class TraitAllocParser(ArgumentParser):
    """Argument errors exit with the validation exit code."""
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, '%s: error: %s\n' % (self.prog, message))


def _caps(s):
    return TruncationCaps.from_string(s)


def _floats(s):
    return [float(x) for x in s.split(',') if x.strip()]


def parse_args(argv=None):
    """Parse command line options."""
    common = TraitAllocParser(add_help=False)
    common.add_argument('--model',
                        type=str,
                        help='Model JSON file or canned model name.')
    common.add_argument('--constraint',
                        type=str,
                        help='Constraint kind or JSON object; overrides the '
                        'model constraint.')
    common.add_argument('--caps',
                        type=_caps,
                        help='Truncation caps K,J,D[,N].',
                        default=TruncationCaps())
    common.add_argument('--seed',
                        type=int,
                        help='Random seed.',
                        default=traitalloc.defaults.seed)
    common.add_argument('--format',
                        dest='fmt',
                        choices=formats,
                        help='Output format.',
                        default='text')
    common.add_argument('--out',
                        type=str,
                        help='Output file (default stdout).')
    common.add_argument('-v',
                        '--verbose',
                        action='count',
                        help='-v for info, -vv for debug messages.',
                        default=0)

    parser = TraitAllocParser(prog='trait-alloc',
                              formatter_class=RawDescriptionHelpFormatter,
                              description=__doc__)
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('sample', parents=[common], help='Sample allocations.')
    p.add_argument('--n', type=int, help='Horizon.', default=1)
    p.add_argument('--draws', type=int, help='Number of draws.', default=1)
    p.add_argument('--max-retries',
                   type=int,
                   help='Per-index rejection budget.',
                   default=traitalloc.defaults.max_retries)

    p = sub.add_parser('prob',
                       parents=[common],
                       help='Allocation probability.')
    p.add_argument('allocation', type=str, help='e.g. "{{1,2},{3}}".')
    p.add_argument('--n',
                   type=int,
                   help='Horizon (default: the largest index).')
    p.add_argument('--oracle',
                   action='store_true',
                   help='Compare with the enumeration oracle.',
                   default=False)

    p = sub.add_parser('check', parents=[common], help='Invariant suites.')
    p.add_argument('--n',
                   type=int,
                   help='Horizon of the exhaustive checks.',
                   default=traitalloc.defaults.check_horizon)
    p.add_argument('--draws',
                   type=int,
                   help='Draws of the statistical checks.',
                   default=traitalloc.defaults.check_draws)
    p.add_argument('--jobs', type=int, help='Worker threads.', default=1)

    p = sub.add_parser('enumerate',
                       parents=[common],
                       help='Exact probability table.')
    p.add_argument('--n', type=int, help='Horizon.', default=1)

    p = sub.add_parser('graph', parents=[common], help='Graphs.')
    p.add_argument('action', choices=('edges', 'growth', 'encode'))
    p.add_argument('allocation',
                   nargs='?',
                   type=str,
                   help='Vertex allocation to encode.')
    p.add_argument('--weights', type=_floats, help='Vertex weights w1,w2,...')
    p.add_argument('--power-law',
                   type=_floats,
                   help='Weights k**-alpha, k = 1..k_max, as alpha,k_max.')
    p.add_argument('--edges', type=int, help='Number of edges.', default=1)
    p.add_argument('--n-max', type=int, help='Growth curve length.', default=0)
    p.add_argument('--step', type=int, help='Growth curve step.', default=1)
    p.add_argument('--via',
                   choices=('direct', 'cfm'),
                   help='Edge sampler.',
                   default='direct')
    p.add_argument('--variant',
                   choices=variants,
                   help='Graph encoding.',
                   default='simple')
    p.add_argument('--max-retries',
                   type=int,
                   help='Per-index rejection budget (cfm sampler).',
                   default=traitalloc.defaults.max_retries)
    return parser.parse_args(argv)


def resolve_model(source, constraint=None):
    """Frequency model and constraint from a file or a canned model name."""
    if source is None:
        raise ConfigError('A model is required (--model)')
    if Path(source).is_file():
        model, model_constraint = load_model(source)
    elif source in testmodels.registry:
        model, model_constraint = testmodels.get(source)
    else:
        raise ConfigError('%r is neither a model file nor a canned model' %
                          source)
    if constraint is not None:
        try:
            obj = json.loads(constraint)
        except json.JSONDecodeError:
            obj = constraint
        model_constraint = ConstraintSet.from_json(obj)
    return model, model_constraint


def build_config(args):
    """RunConfig from parsed arguments."""
    kwargs = {k: v for k, v in vars(args).items() if v is not None}
    return RunConfig(**kwargs)


def cmd_sample(config):
    """Stream `draws` allocations; return the exit code."""
    model, constraint = resolve_model(config.model, config.constraint)
    rng = RngState(config.seed)
    failed = []

    def allocations():
        for k in range(config.draws):
            try:
                yield sample_constrained(model,
                                         constraint,
                                         config.n or 0,
                                         rng,
                                         max_retries=config.max_retries,
                                         caps=config.caps)
            except RetryExhaustedError as e:
                failed.append(k)
                print('draw %d: %s' % (k, e), file=sys.stderr)

    write_allocations(allocations(), config.out, config.fmt)
    return EXIT_RETRY_EXHAUSTED if failed else EXIT_OK


def cmd_prob(config):
    """Probability of `config.allocation`, optionally against the oracle."""
    model, constraint = resolve_model(config.model, config.constraint)
    t = parse_alloc(config.allocation, horizon=config.n)
    if t.horizon > config.caps.horizon:
        raise ValidationError('Horizon %d exceeds the cap %d' %
                              (t.horizon, config.caps.horizon))
    if constraint.kind == 'all':
        prob = etpf_prob(model, t)
    else:
        prob = cetpf_prob(model, constraint, t, config.caps)
    row = {'allocation': str(t), 'probability': prob}
    if config.oracle:
        if constraint.kind == 'all':
            result = oracle_prob_frequency(model, t, config.caps)
            value, bound = result.prob, result.error_bound
        else:
            table = enumerate_support(model, t.horizon, config.caps,
                                      constraint)
            value = table.normalized().prob(t) if table else 0.0
            bound = table.error_bound(t)
        row.update(oracle=value,
                   error_bound=bound,
                   difference=abs(prob - value))
    if config.fmt == 'text':
        with open_output(config.out) as out:
            for k, v in row.items():
                v = v if isinstance(v, str) else '%.17g' % v
                print('%s\t%s' % (k, v), file=out)
    else:
        write_frame(pandas.DataFrame([row]), config.out, config.fmt)
    return EXIT_OK


def cmd_check(config):
    """Run the invariant suites; exit code 2 if any check fails."""
    model, constraint = resolve_model(config.model, config.constraint)
    suite = build_suite(model,
                        constraint,
                        N=config.n,
                        draws=config.draws,
                        caps=config.caps)
    results = run_checks(suite, seed=config.seed, jobs=config.jobs)
    df = pandas.DataFrame(results, columns=['name', 'passed', 'discrepancy',
                                            'detail'])
    write_frame(df, config.out, config.fmt)
    if all(r.passed for r in results):
        return EXIT_OK
    return EXIT_CHECK_FAILED


def cmd_enumerate(config):
    """Dump the probability table at horizon n."""
    model, constraint = resolve_model(config.model, config.constraint)
    if constraint.kind == 'all':
        table = enumerate_support(model, config.n or 0, config.caps)
    else:
        table = enumerate_support(model, config.n or 0, config.caps,
                                  constraint).normalized()
    logger.info('%r', table)
    write_table(table, config.out, config.fmt)
    return EXIT_OK


def _vertex_weights(config):
    if config.weights is not None:
        return VertexWeights(config.weights)
    if config.power_law is not None:
        if len(config.power_law) != 2:
            raise ConfigError('--power-law takes alpha,k_max')
        alpha, k_max = config.power_law
        return VertexWeights.power_law(alpha, int(k_max))
    return None


def cmd_graph(config):
    """Edge lists, growth curves and allocation encodings."""
    fmt = 'csv' if config.fmt == 'text' else config.fmt
    if config.command == 'encode':
        if config.allocation is None:
            raise ConfigError('graph encode needs an allocation')
        g = alloc_to_graph(parse_alloc(config.allocation, horizon=config.n),
                           variant=config.variant)
        write_graph(g, config.out, fmt)
        return EXIT_OK
    rng = RngState(config.seed)
    w = _vertex_weights(config)
    if config.command == 'growth':
        constraint = None
        if w is None:
            source, constraint = resolve_model(config.model,
                                               config.constraint)
        else:
            source = w
        df = growth_curve(source,
                          config.n_max,
                          step=config.step,
                          rng=rng,
                          constraint=constraint,
                          max_retries=config.max_retries)
        write_frame(df, config.out, fmt)
        return EXIT_OK
    if w is None:
        raise ConfigError('graph edges needs --weights or --power-law')
    if config.via == 'cfm':
        edges = cfm_edges(w.w, config.edges, rng,
                          max_retries=config.max_retries)
    else:
        edges = draw_edges(w, config.edges, rng)
    write_graph(Multigraph(range(1, len(w) + 1), edges), config.out, fmt)
    return EXIT_OK


commands = {
    'sample': cmd_sample,
    'prob': cmd_prob,
    'check': cmd_check,
    'enumerate': cmd_enumerate,
    'graph': cmd_graph,
}


def main(argv=None):
    """Run a subcommand and return the exit code."""
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return e.code
    level = [logging.WARNING, logging.INFO,
             logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level)
    command = args.command
    if command == 'graph':
        # the graph action takes the place of the command
        args.command = args.action
        del args.action
    try:
        config = build_config(args)
        return commands[command](config)
    except RetryExhaustedError as e:
        print('trait-alloc: %s' % e, file=sys.stderr)
        return EXIT_RETRY_EXHAUSTED
    except ValidationError as e:
        print('trait-alloc: error: %s' % e, file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == '__main__':
    sys.exit(main())
