"""
Network descriptions and average reception rates.
"""
from .aloha import AlohaChannel, aloha_reception_rates
from .networks import (
    Arc,
    Hyperarc,
    WirelessNetwork,
    WirelineNetwork,
    format_set,
    nonempty_subsets,
)
from .processes import InjectionProcess, LossProcess, MarkovChain, MarkovChainRuntime
from .rates import effective_rate_iid, effective_rate_markov
from .transform import tandem_network, transform_delay_link

__all__ = [
    'AlohaChannel',
    'Arc',
    'Hyperarc',
    'InjectionProcess',
    'LossProcess',
    'MarkovChain',
    'MarkovChainRuntime',
    'WirelessNetwork',
    'WirelineNetwork',
    'aloha_reception_rates',
    'effective_rate_iid',
    'effective_rate_markov',
    'format_set',
    'nonempty_subsets',
    'tandem_network',
    'transform_delay_link',
]
