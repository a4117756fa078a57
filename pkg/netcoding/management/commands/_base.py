"""
Shared plumbing of the experiment commands.

Each command builds a ResultsTable from its options; the base class loads
the network, writes the table, records the run and turns library errors
into CommandError with the matching exit code.
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from ...conf import get_setting
from ...exceptions import ConfigurationError, NetcodingError
from ...gf import SUPPORTED_SIZES
from ...io import parse_network
from ...models import ExperimentRun

logger = logging.getLogger(__name__)


def float_list(text):
    try:
        values = [float(v) for v in str(text).split(',') if v.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"expected comma separated numbers, got {text!r}") from exc
    if not values:
        raise ConfigurationError("the list is empty")
    return values


def int_list(text):
    values = float_list(text)
    if any(v != int(v) for v in values):
        raise ConfigurationError(f"expected comma separated integers, got {text!r}")
    return [int(v) for v in values]


def node_list(text):
    return [n.strip() for n in str(text).split(',') if n.strip()]


class ExperimentCommand(BaseCommand):
    """
    Subclasses set ``name`` and implement ``build_table(net, options)``,
    which returns (ResultsTable, summary dict).
    """

    name = None
    seed_required = True

    def add_arguments(self, parser):
        parser.add_argument('--network', required=True,
                            help="Network JSON file, bundled:<name> or tandem:<z1>,<z2>,...")
        parser.add_argument('--out', default='-', help="CSV output path ('-' for standard output)")
        parser.add_argument('--seed', type=int, required=self.seed_required, default=0,
                            help="Base seed; replication i uses seed XOR i")
        parser.add_argument('--source', default=None, help="Source node (default: declared in the network)")
        parser.add_argument('--sinks', default=None, help="Comma separated sink nodes")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def add_field_argument(self, parser):
        parser.add_argument('--field', type=int, choices=SUPPORTED_SIZES, default=get_setting('DEFAULT_FIELD'),
                            help="Field size q")

    # ------------------------------------------------------------------

    def terminals(self, net, options):
        source = options['source'] or net.source
        if source is None:
            raise ConfigurationError("no --source given and the network declares none", 'source')
        sinks = node_list(options['sinks']) if options['sinks'] else list(net.sinks)
        if not sinks:
            raise ConfigurationError("no --sinks given and the network declares none", 'sinks')
        missing = [n for n in [source] + sinks if n not in net.nodes]
        if missing:
            raise ConfigurationError(f"unknown nodes {', '.join(missing)}", 'sinks')
        return str(source), [str(t) for t in sinks]

    def config(self, options):
        """Options that determine the table, for the config hash."""
        skip = {'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color', 'force_color',
                'skip_checks', 'out'}
        return {'command': self.name, **{k: v for k, v in options.items() if k not in skip}}

    def build_table(self, net, options):
        raise NotImplementedError

    def handle(self, *args, **options):
        base = dict(command=self.name, network=options['network'], seed=options['seed'],
                    output_path=options['out'])
        try:
            net = parse_network(options['network'])
            table, summary = self.build_table(net, options)
        except NetcodingError as exc:
            logger.error("%s failed: %s", self.name, exc, exc_info=options.get('traceback', False))
            ExperimentRun.record(config_hash='', exit_code=exc.exit_code, summary={'error': str(exc)}, **base)
            raise CommandError(str(exc), returncode=exc.exit_code) from exc

        text = table.write(options['out'])
        if options['out'] == '-':
            self.stdout.write(text, ending='')
        exit_code = summary.pop('exit_code', 0)
        ExperimentRun.record(config_hash=table.config_hash, row_count=len(table), exit_code=exit_code,
                             summary=summary, **base)
        logger.info("%s wrote %d rows to %s", self.name, len(table), options['out'])
        if exit_code:
            raise CommandError(summary.get('diagnostic', f"{self.name} finished with exit code {exit_code}"),
                               returncode=exit_code)
