"""
Reading network descriptions.

A network is a JSON document:

    {
      "kind": "wireline",
      "nodes": ["1", "2", "3"],
      "source": "1",
      "sinks": ["3"],
      "chains": {"ge": {"transitions": [[0, 1], [3, 0]], "loss": [0.1, 0.9]}},
      "arcs": [
        {"tail": "1", "head": "2", "z": 1.0},
        {"tail": "2", "head": "3",
         "injection": {"kind": "poisson", "rate": 1.0},
         "loss": {"kind": "markov", "chain": "ge"}}
      ]
    }

Wireless networks use ``"kind": "wireless"`` and ``hyperarcs`` with
``heads``; a hyperarc gives either ``z`` (a list of ``{"receivers": [...],
"z": ...}``), an injection with an optional ``reception`` list of
``{"receivers": [...], "p": ...}``, or ``"loss": {"kind": "aloha",
"transmit_probability": ...}``. An optional ``aloha`` object declares
``interferers`` per receiver and a conditional reception ``table``.

Every validation error is a ConfigurationError naming the offending field
(``arcs[1].loss.epsilon``) or, for malformed JSON, the line and column.
"""
import json
import logging
from pathlib import Path as FilePath

from ..exceptions import ConfigurationError, DomainError
from ..netmodel import (
    AlohaChannel,
    Arc,
    Hyperarc,
    InjectionProcess,
    LossProcess,
    MarkovChain,
    WirelessNetwork,
    WirelineNetwork,
    tandem_network,
)

logger = logging.getLogger(__name__)

BUNDLED_DIR = FilePath(__file__).resolve().parent / 'networks'
BUNDLED_PREFIX = 'bundled:'
TANDEM_PREFIX = 'tandem:'


def bundled_networks():
    return sorted(p.stem for p in BUNDLED_DIR.glob('*.json'))


def _require(mapping, key, location, kind=None):
    if not isinstance(mapping, dict):
        raise ConfigurationError("expected an object", location)
    if key not in mapping:
        raise ConfigurationError(f"missing required field '{key}'", location)
    value = mapping[key]
    if kind is not None and not isinstance(value, kind):
        raise ConfigurationError(f"'{key}' has the wrong type", f"{location}.{key}" if location else key)
    return value


def _number(value, location, minimum=None):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigurationError(f"expected a number, got {value!r}", location)
    value = float(value)
    if minimum is not None and value < minimum:
        raise ConfigurationError(f"must be at least {minimum}, got {value}", location)
    return value


def _node_list(value, location):
    if not isinstance(value, list):
        raise ConfigurationError("expected a list of node ids", location)
    return [str(n) for n in value]


def _parse_injection(data, location):
    kind = _require(data, 'kind', location, str)
    if kind == InjectionProcess.POISSON:
        return InjectionProcess.poisson(_number(_require(data, 'rate', location), f"{location}.rate", 0.0))
    if kind == InjectionProcess.DETERMINISTIC:
        return InjectionProcess.deterministic()
    if kind == InjectionProcess.TRACE:
        times = _require(data, 'times', location, list)
        return InjectionProcess.trace([_number(t, f"{location}.times[{i}]", 0.0) for i, t in enumerate(times)])
    raise ConfigurationError(f"unknown injection kind {kind!r}", f"{location}.kind")


def _parse_chain(name, data, location):
    transitions = _require(data, 'transitions', location, list)
    loss = _require(data, 'loss', location, list)
    rates = data.get('rates')
    try:
        return MarkovChain(transitions, loss, rates, name=name)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(str(exc), location) from exc


def _parse_loss(data, location, chains):
    if data is None:
        return LossProcess.lossless()
    kind = _require(data, 'kind', location, str)
    if kind == LossProcess.LOSSLESS:
        return LossProcess.lossless()
    if kind == LossProcess.IID:
        epsilon = _number(_require(data, 'epsilon', location), f"{location}.epsilon", 0.0)
        if epsilon > 1:
            raise ConfigurationError("loss probability must not exceed 1", f"{location}.epsilon")
        return LossProcess.iid(epsilon)
    if kind == LossProcess.MARKOV:
        chain = _require(data, 'chain', location)
        if isinstance(chain, str):
            if chain not in chains:
                raise ConfigurationError(f"unknown chain {chain!r}", f"{location}.chain")
            return LossProcess.markov(chains[chain])
        return LossProcess.markov(_parse_chain(None, chain, f"{location}.chain"))
    if kind == LossProcess.ALOHA:
        p = _number(_require(data, 'transmit_probability', location), f"{location}.transmit_probability", 0.0)
        if p > 1:
            raise ConfigurationError("transmit probability must not exceed 1", f"{location}.transmit_probability")
        return LossProcess.aloha(p)
    raise ConfigurationError(f"unknown loss kind {kind!r}", f"{location}.kind")


def _parse_sets(entries, value_key, location):
    if not isinstance(entries, list):
        raise ConfigurationError("expected a list of receiver sets", location)
    out = {}
    for i, entry in enumerate(entries):
        where = f"{location}[{i}]"
        receivers = frozenset(_node_list(_require(entry, 'receivers', where), f"{where}.receivers"))
        if receivers in out:
            raise ConfigurationError("receiver set listed twice", where)
        out[receivers] = _number(_require(entry, value_key, where), f"{where}.{value_key}", 0.0)
    return out


def _parse_arc(data, location, chains):
    tail = str(_require(data, 'tail', location))
    head = str(_require(data, 'head', location))
    z = data.get('z')
    injection = data.get('injection')
    if z is None and injection is None:
        raise ConfigurationError("arc needs either 'z' or an 'injection' process", location)
    return Arc(
        tail,
        head,
        injection=None if injection is None else _parse_injection(injection, f"{location}.injection"),
        loss=_parse_loss(data.get('loss'), f"{location}.loss", chains),
        z_override=None if z is None else _number(z, f"{location}.z", 0.0),
    )


def _parse_hyperarc(data, location, chains):
    tail = str(_require(data, 'tail', location))
    heads = _node_list(_require(data, 'heads', location), f"{location}.heads")
    loss = _parse_loss(data.get('loss'), f"{location}.loss", chains)
    injection = data.get('injection')
    z = data.get('z')
    if loss.kind != LossProcess.ALOHA and z is None and injection is None:
        raise ConfigurationError("hyperarc needs 'z', an 'injection' process or an aloha loss", location)
    reception = data.get('reception')
    return Hyperarc(
        tail,
        frozenset(heads),
        injection=None if injection is None else _parse_injection(injection, f"{location}.injection"),
        reception=None if reception is None else _parse_sets(reception, 'p', f"{location}.reception"),
        z_override=None if z is None else _parse_sets(z, 'z', f"{location}.z"),
        loss=loss,
        name=data.get('name'),
    )


def _parse_aloha(data, location):
    interferers = {
        str(j): _node_list(nodes, f"{location}.interferers.{j}")
        for j, nodes in (data.get('interferers') or {}).items()
    }
    table = {}
    for i, entry in enumerate(data.get('table') or []):
        where = f"{location}.table[{i}]"
        h = int(_number(_require(entry, 'hyperarc', where), f"{where}.hyperarc", 0))
        transmitting = frozenset(int(x) for x in _require(entry, 'transmitting', where, list))
        table[(h, transmitting)] = _parse_sets(_require(entry, 'reception', where), 'p', f"{where}.reception")
    return AlohaChannel(interferers, table)


def network_from_dict(data):
    """Build a network from an already decoded JSON document."""
    kind = _require(data, 'kind', '', str)
    nodes = _node_list(_require(data, 'nodes', ''), 'nodes')
    source = data.get('source')
    sinks = _node_list(data.get('sinks') or [], 'sinks')
    chains = {
        name: _parse_chain(name, chain, f"chains.{name}")
        for name, chain in (data.get('chains') or {}).items()
    }
    try:
        if kind == 'wireline':
            arcs = [_parse_arc(a, f"arcs[{i}]", chains) for i, a in enumerate(_require(data, 'arcs', '', list))]
            return WirelineNetwork(nodes, arcs, source=source, sinks=sinks)
        if kind == 'wireless':
            hyperarcs = [
                _parse_hyperarc(h, f"hyperarcs[{i}]", chains)
                for i, h in enumerate(_require(data, 'hyperarcs', '', list))
            ]
            aloha = _parse_aloha(data['aloha'], 'aloha') if 'aloha' in data else None
            if aloha is None and any(h.is_aloha for h in hyperarcs):
                aloha = AlohaChannel()
            return WirelessNetwork(nodes, hyperarcs, source=source, sinks=sinks, aloha=aloha)
    except DomainError as exc:
        raise ConfigurationError(str(exc)) from exc
    raise ConfigurationError(f"unknown network kind {kind!r}", 'kind')


def _tandem_from_shorthand(text):
    try:
        rates = [float(v) for v in text.split(',') if v.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"bad tandem rate list {text!r}", 'network') from exc
    if not rates or any(r < 0 for r in rates):
        raise ConfigurationError("a tandem needs at least one non-negative rate", 'network')
    return tandem_network(rates)


def parse_network(path):
    """
    Load a network from a JSON file, a ``bundled:<name>`` fixture, or a
    ``tandem:<z1>,<z2>,...`` Poisson tandem.
    """
    path = str(path)
    if path.startswith(TANDEM_PREFIX):
        return _tandem_from_shorthand(path[len(TANDEM_PREFIX):])
    if path.startswith(BUNDLED_PREFIX):
        name = path[len(BUNDLED_PREFIX):]
        if name not in bundled_networks():
            raise ConfigurationError(
                f"unknown bundled network {name!r}; choose from {', '.join(bundled_networks())}", 'network'
            )
        file_path = BUNDLED_DIR / f"{name}.json"
    else:
        file_path = FilePath(path)
    if not file_path.is_file():
        raise ConfigurationError(f"network file {path} does not exist", 'network')
    try:
        data = json.loads(file_path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{exc.msg} (line {exc.lineno}, column {exc.colno})", str(file_path)) from exc
    network = network_from_dict(data)
    logger.debug("loaded %r from %s", network, file_path)
    return network
