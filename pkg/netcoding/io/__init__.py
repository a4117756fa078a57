"""
Network files and result tables.
"""
from .parsing import bundled_networks, network_from_dict, parse_network
from .results import ResultsTable, config_hash, format_value, read_table

__all__ = [
    'ResultsTable',
    'bundled_networks',
    'config_hash',
    'format_value',
    'network_from_dict',
    'parse_network',
    'read_table',
]
