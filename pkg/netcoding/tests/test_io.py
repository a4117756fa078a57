import json
import math
import tempfile
from pathlib import Path

from django.test import SimpleTestCase, override_settings

from netcoding import __version__
from netcoding.capacity import min_cut
from netcoding.exceptions import ConfigurationError
from netcoding.io import (
    ResultsTable,
    bundled_networks,
    config_hash,
    format_value,
    network_from_dict,
    parse_network,
    read_table,
)
from netcoding.netmodel import LossProcess


def wireline(**changes):
    data = {
        'kind': 'wireline',
        'nodes': ['1', '2', '3'],
        'source': '1',
        'sinks': ['3'],
        'arcs': [
            {'tail': '1', 'head': '2', 'z': 1.0},
            {'tail': '2', 'head': '3', 'injection': {'kind': 'poisson', 'rate': 1.0},
             'loss': {'kind': 'iid', 'epsilon': 0.5}},
        ],
    }
    data.update(changes)
    return data


class ParseNetworkTests(SimpleTestCase):
    def test_bundled_fixtures_are_listed(self):
        self.assertIn('tandem2', bundled_networks())
        self.assertIn('aloha_relay', bundled_networks())

    def test_bundled_tandem(self):
        net = parse_network('bundled:tandem2')
        self.assertEqual(len(net.nodes), 3)
        self.assertEqual(len(net.arcs), 2)
        self.assertAlmostEqual(net.z[0], 1.0)
        self.assertAlmostEqual(net.z[1], 0.5)

    def test_bundled_aloha_relay(self):
        net = parse_network('bundled:aloha_relay')
        self.assertEqual(net.kind, 'wireless')
        self.assertTrue(all(h.loss.kind == LossProcess.ALOHA for h in net.hyperarcs))
        self.assertAlmostEqual(min_cut(net, '1', '3').value, 0.5)

    def test_bundled_markov_tandem(self):
        net = parse_network('bundled:gilbert_elliott_tandem')
        self.assertAlmostEqual(net.z[0], 0.7)
        self.assertEqual(net.arcs[0].loss.chain.name, 'ge')

    def test_unknown_bundled_name(self):
        with self.assertRaises(ConfigurationError):
            parse_network('bundled:nowhere')

    def test_tandem_shorthand(self):
        net = parse_network('tandem:2,1')
        self.assertEqual(net.nodes, ('1', '2', '3'))
        self.assertEqual(net.z, (2.0, 1.0))
        with self.assertRaises(ConfigurationError):
            parse_network('tandem:2,x')

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            parse_network('/nonexistent/network.json')

    def test_json_errors_name_line_and_column(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'broken.json'
            path.write_text('{\n"kind": "wireline",\n"nodes": ]\n}', encoding='utf-8')
            with self.assertRaises(ConfigurationError) as cm:
                parse_network(path)
        self.assertIn('line 3', str(cm.exception))
        self.assertIn('column 10', str(cm.exception))

    def test_file_round_trip(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'net.json'
            path.write_text(json.dumps(wireline()), encoding='utf-8')
            net = parse_network(str(path))
        self.assertEqual(net.z, (1.0, 0.5))


class ValidationTests(SimpleTestCase):
    def test_negative_rate_names_its_location(self):
        data = wireline()
        data['arcs'][1]['injection']['rate'] = -1
        with self.assertRaises(ConfigurationError) as cm:
            network_from_dict(data)
        self.assertEqual(cm.exception.location, 'arcs[1].injection.rate')

    def test_loss_above_one(self):
        data = wireline()
        data['arcs'][1]['loss']['epsilon'] = 1.5
        with self.assertRaises(ConfigurationError) as cm:
            network_from_dict(data)
        self.assertEqual(cm.exception.location, 'arcs[1].loss.epsilon')

    def test_unknown_chain(self):
        data = wireline()
        data['arcs'][1]['loss'] = {'kind': 'markov', 'chain': 'missing'}
        with self.assertRaises(ConfigurationError) as cm:
            network_from_dict(data)
        self.assertEqual(cm.exception.location, 'arcs[1].loss.chain')

    def test_arc_needs_a_rate(self):
        data = wireline()
        del data['arcs'][0]['z']
        with self.assertRaises(ConfigurationError) as cm:
            network_from_dict(data)
        self.assertEqual(cm.exception.location, 'arcs[0]')

    def test_unknown_kind(self):
        with self.assertRaises(ConfigurationError):
            network_from_dict(wireline(kind='optical'))

    def test_hyperarc_receiver_sets(self):
        data = {
            'kind': 'wireless',
            'nodes': ['1', '2', '3'],
            'hyperarcs': [{
                'tail': '1',
                'heads': ['2', '3'],
                'z': [{'receivers': ['2'], 'z': 0.3}, {'receivers': ['2', '3'], 'z': 0.4}],
            }],
        }
        net = network_from_dict(data)
        self.assertEqual(net.z[0], {frozenset({'2'}): 0.3, frozenset({'2', '3'}): 0.4})

    def test_duplicate_receiver_set(self):
        data = {
            'kind': 'wireless',
            'nodes': ['1', '2'],
            'hyperarcs': [{
                'tail': '1',
                'heads': ['2'],
                'z': [{'receivers': ['2'], 'z': 0.3}, {'receivers': ['2'], 'z': 0.4}],
            }],
        }
        with self.assertRaises(ConfigurationError) as cm:
            network_from_dict(data)
        self.assertEqual(cm.exception.location, 'hyperarcs[0].z[1]')


class ResultsTableTests(SimpleTestCase):
    def table(self):
        table = ResultsTable('capacity', ('sink', 'value', 'ok'), seed=7, config={'network': 'x'}, field=256)
        table.add_row('3', 1 / 3, True)
        table.add_row(sink='4', value=math.inf, ok=None)
        return table

    def test_header_lines(self):
        lines = self.table().header_lines()
        self.assertEqual(lines[0], f"# tool: lossynet {__version__}")
        self.assertEqual(lines[1], "# command: capacity")
        self.assertEqual(lines[2], f"# config_hash: {config_hash({'network': 'x'})}")
        self.assertEqual(lines[3], "# seed: 7")
        self.assertEqual(lines[4], "# field: 256")

    def test_rows_are_formatted(self):
        body = self.table().render().splitlines()[5:]
        self.assertEqual(body, ['sink,value,ok', '3,0.333333333,true', '4,inf,'])

    def test_render_is_deterministic(self):
        self.assertEqual(self.table().render(), self.table().render())

    def test_config_hash_ignores_key_order(self):
        self.assertEqual(config_hash({'a': 1, 'b': 2}), config_hash({'b': 2, 'a': 1}))
        self.assertEqual(len(config_hash({})), 16)

    @override_settings(NETCODING={'FLOAT_DIGITS': 3})
    def test_float_digits_setting(self):
        self.assertEqual(format_value(2 / 3), '0.667')

    def test_row_width_is_checked(self):
        with self.assertRaises(ValueError):
            self.table().add_row('5')
        with self.assertRaises(KeyError):
            self.table().add_row(other=1)

    def test_column(self):
        self.assertEqual(self.table().column('sink'), ['3', '4'])

    def test_write_and_read_back(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'out' / 'table.csv'
            text = self.table().write(path)
            self.assertEqual(path.read_text(encoding='utf-8'), text)
            metadata, header, rows = read_table(path)
        self.assertEqual(metadata['command'], 'capacity')
        self.assertEqual(metadata['seed'], '7')
        self.assertEqual(header, ['sink', 'value', 'ok'])
        self.assertEqual(rows[0], ['3', '0.333333333', 'true'])

    def test_dash_returns_text_only(self):
        self.assertEqual(self.table().write('-'), self.table().render())
