from dataclasses import replace

from .networks import Arc, WirelineNetwork
from .processes import InjectionProcess, LossProcess


def transform_delay_link(net, arc):
    """
    Split arc (i, j) into a lossy arc (i, i') and a lossless arc (i', j).

    The inserted node models a link with delay as a first-in first-out
    queue. Both new arcs carry the original reception rate; the second one
    is simulated as a lossless Poisson stream of that rate. ``arc`` is an
    arc index or a (tail, head) pair; parallel arcs resolve to the first.
    """
    index = arc if isinstance(arc, int) else net.arc_index(*arc)
    original = net.arcs[index]
    relay = f"{original.tail}'"
    while relay in net.nodes:
        relay += "'"
    z = original.z
    first = replace(original, head=relay)
    second = Arc(relay, original.head, InjectionProcess.poisson(z), LossProcess.lossless(), z_override=z)
    arcs = list(net.arcs)
    arcs[index:index + 1] = [first, second]
    return WirelineNetwork(net.nodes + (relay,), arcs, source=net.source, sinks=net.sinks)


def tandem_network(rates, deterministic=False):
    """
    L-link tandem 1 -> 2 -> ... -> L+1 with lossless links of rate z_l.

    Poisson injections by default; ``deterministic`` uses one injection per
    unit time on every link, which fixes every rate at 1.
    """
    nodes = [str(n) for n in range(1, len(rates) + 2)]
    arcs = []
    for tail, head, z in zip(nodes, nodes[1:], rates):
        injection = InjectionProcess.deterministic() if deterministic else InjectionProcess.poisson(z)
        arcs.append(Arc(tail, head, injection, LossProcess.lossless()))
    return WirelineNetwork(nodes, arcs, source=nodes[0], sinks=[nodes[-1]])
