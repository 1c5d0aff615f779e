"""Serializers for detailed and condensed networks.

All writers are pure and deterministic: species, reactions and lines are
emitted in sorted order and floats use fixed formatting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union
from xml.sax.saxutils import quoteattr

from .condense import CondensedNetwork
from .model import Complex, Domain, ReactionNetwork, Strand, domains_of, strands_of

JSON_SCHEMA_VERSION = 1

Network = Union[ReactionNetwork, CondensedNetwork]


def fmt_rate(k: float) -> str:
    return f"{k:.6e}"


@dataclass(frozen=True)
class _Species:
    name: str
    transient: bool = False


@dataclass(frozen=True)
class _Rxn:
    reactants: tuple
    products: tuple
    rate: float | None
    units: str
    label: str


def _flatten(net: Network):
    """Species, reactions and clusters as plain names."""
    if isinstance(net, CondensedNetwork):
        species = [_Species(q.name) for q in net.resting_sets]
        rxns = [_Rxn(tuple(sorted(q.name for q in r.reactants)),
                     tuple(sorted(q.name for q in r.products)),
                     r.rate_constant, r.units, "condensed")
                for r in net.reactions]
        clusters = []
    else:
        transient = set(net.transients)
        species = [_Species(c.name, c in transient) for c in net.complexes]
        rxns = [_Rxn(tuple(sorted(c.name for c in r.reactants)),
                     tuple(sorted(c.name for c in r.products)),
                     r.rate_constant, r.units, r.move_type)
                for r in net.reactions]
        clusters = [(q.name, [c.name for c in q]) for q in net.resting_sets]
    species.sort(key=lambda s: s.name)
    rxns.sort(key=lambda r: (r.reactants, r.products, r.label))
    return species, rxns, clusters


def write_crn(net: Network, rates: bool = False) -> str:
    """One ``A + B -> C + D`` line per reaction, optionally with ``@ k units``."""
    _, rxns, _ = _flatten(net)
    lines = []
    for r in rxns:
        line = " + ".join(r.reactants) + " -> " + " + ".join(r.products)
        if rates and r.rate is not None:
            line += f" @ {fmt_rate(r.rate)} {r.units}"
        lines.append(line)
    lines.sort()
    return "".join(line + "\n" for line in lines)


# -- JSON ---------------------------------------------------------------------

def _complex_doc(c: Complex) -> dict:
    return {
        "name": c.name,
        "strands": [s.name for s in c.strands],
        "structure": [[None if b is None else list(b) for b in row] for row in c.structure],
        "kernel": c.kernel(),
    }


def network_document(net: Network, condensed: CondensedNetwork | None = None) -> dict:
    if isinstance(net, CondensedNetwork):
        complexes = sorted({c for q in net.resting_sets for c in q}, key=lambda c: c.name)
        doc = {"schema_version": JSON_SCHEMA_VERSION, "kind": "condensed",
               "truncated": net.truncated}
        doc.update(_species_section(complexes))
        doc["resting_sets"] = [{"name": q.name, "complexes": [c.name for c in q]}
                               for q in sorted(net.resting_sets, key=lambda q: q.name)]
        doc["transients"] = []
        doc["reactions"] = []
        doc["condensed_reactions"] = _condensed_section(net)
        return doc
    complexes = sorted(net.complexes, key=lambda c: c.name)
    doc = {"schema_version": JSON_SCHEMA_VERSION, "kind": "detailed", "truncated": net.truncated}
    doc.update(_species_section(complexes))
    doc["reactions"] = sorted(
        ({"reactants": sorted(c.name for c in r.reactants),
          "products": sorted(c.name for c in r.products),
          "move_type": r.move_type,
          "arity": list(r.arity),
          "rate_constant": r.rate_constant,
          "units": r.units} for r in net.reactions),
        key=lambda d: (d["reactants"], d["products"], d["move_type"]))
    doc["resting_sets"] = [{"name": q.name, "complexes": sorted(c.name for c in q)}
                           for q in sorted(net.resting_sets, key=lambda q: q.name)]
    doc["transients"] = sorted(c.name for c in net.transients)
    if condensed is not None:
        doc["condensed_reactions"] = _condensed_section(condensed)
    return doc


def _species_section(complexes) -> dict:
    return {
        "domains": [{"name": d.name, "length": d.length} for d in domains_of(complexes)],
        "strands": [{"name": s.name, "domains": list(s.labels)} for s in strands_of(complexes)],
        "complexes": [_complex_doc(c) for c in complexes],
    }


def _condensed_section(net: CondensedNetwork) -> list:
    return sorted(
        ({"reactants": sorted(q.name for q in r.reactants),
          "products": sorted(q.name for q in r.products),
          "rate_constant": r.rate_constant,
          "units": r.units} for r in net.reactions),
        key=lambda d: (d["reactants"], d["products"]))


def write_json(net: Network, condensed: CondensedNetwork | None = None) -> str:
    return json.dumps(network_document(net, condensed), indent=2, sort_keys=True) + "\n"


def read_json_complexes(text: str) -> list[Complex]:
    """Rebuild the complexes section of a document written by :func:`write_json`."""
    doc = json.loads(text)
    domains = {d["name"]: Domain(d["name"], d["length"]) for d in doc["domains"]}

    def dom(label: str) -> Domain:
        if label.endswith("*"):
            return domains[label[:-1]].complement()
        return domains[label]

    strands = {s["name"]: Strand(s["name"], tuple(dom(x) for x in s["domains"]))
               for s in doc["strands"]}
    out = []
    for c in doc["complexes"]:
        structure = [[None if b is None else tuple(b) for b in row] for row in c["structure"]]
        out.append(Complex.build([strands[n] for n in c["strands"]], structure, name=c["name"]))
    return out


# -- DOT ----------------------------------------------------------------------

def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def write_dot(net: Network) -> str:
    """Bipartite graph: boxes for species, circles for reactions."""
    species, rxns, clusters = _flatten(net)
    lines = ["digraph network {", "  rankdir=LR;", "  node [fontname=\"Helvetica\"];"]
    clustered = set()
    for i, (name, members) in enumerate(sorted(clusters)):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f"    label={_q(name)}; style=filled; fillcolor=\"#fff8dc\";")
        for m in sorted(members):
            lines.append(f"    {_q('c:' + m)} [label={_q(m)}, shape=box, style=\"rounded,filled\", fillcolor=\"#ffef9f\"];")
            clustered.add(m)
        lines.append("  }")
    for s in species:
        if s.name in clustered:
            continue
        style = "rounded,dashed" if s.transient else "rounded"
        lines.append(f"  {_q('c:' + s.name)} [label={_q(s.name)}, shape=box, style={_q(style)}];")
    for i, r in enumerate(rxns):
        rid = f"r{i}"
        color = "#4a7bd0" if len(r.reactants) == 1 else "#d04a4a"
        label = "" if r.rate is None else fmt_rate(r.rate)
        lines.append(f"  {rid} [shape=circle, label=\"\", width=0.15, style=filled, "
                     f"fillcolor={_q(color)}, tooltip={_q(label)}];")
        for a in r.reactants:
            lines.append(f"  {_q('c:' + a)} -> {rid};")
        for b in r.products:
            lines.append(f"  {rid} -> {_q('c:' + b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- SBML ---------------------------------------------------------------------

def _sid(name: str) -> str:
    out = "".join(ch if ch.isalnum() or ch == "_" else "_" for ch in name)
    return "s_" + out


def write_sbml_min(net: Network) -> str:
    """Minimal SBML Level 3 core model with mass-action kinetic laws."""
    species, rxns, _ = _flatten(net)
    ids = {}
    for s in species:
        sid = _sid(s.name)
        while sid in ids.values():
            sid += "_"
        ids[s.name] = sid
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<sbml xmlns="http://www.sbml.org/sbml/level3/version1/core" level="3" version="1">',
        '  <model id="network" substanceUnits="mole" timeUnits="second" extentUnits="mole">',
        '    <listOfCompartments>',
        '      <compartment id="cell" spatialDimensions="3" size="1" constant="true"/>',
        '    </listOfCompartments>',
        '    <listOfSpecies>',
    ]
    for s in species:
        out.append(f'      <species id="{ids[s.name]}" name={quoteattr(s.name)} compartment="cell" '
                   'initialConcentration="0" hasOnlySubstanceUnits="false" '
                   'boundaryCondition="false" constant="false"/>')
    out.append('    </listOfSpecies>')
    out.append('    <listOfReactions>')
    for i, r in enumerate(rxns):
        rid = f"r{i}"
        out.append(f'      <reaction id="{rid}" reversible="false">')
        for tag, side in (("listOfReactants", r.reactants), ("listOfProducts", r.products)):
            out.append(f'        <{tag}>')
            counts: dict = {}
            for n in side:
                counts[n] = counts.get(n, 0) + 1
            for n in sorted(counts):
                out.append(f'          <speciesReference species="{ids[n]}" '
                           f'stoichiometry="{counts[n]}" constant="true"/>')
            out.append(f'        </{tag}>')
        k = 0.0 if r.rate is None else r.rate
        terms = "".join(f"<ci> {ids[n]} </ci>" for n in r.reactants)
        out += [
            '        <kineticLaw>',
            '          <math xmlns="http://www.w3.org/1998/Math/MathML">',
            f'            <apply><times/><ci> k </ci>{terms}</apply>',
            '          </math>',
            '          <listOfLocalParameters>',
            f'            <localParameter id="k" value="{fmt_rate(k)}"/>',
            '          </listOfLocalParameters>',
            '        </kineticLaw>',
            '      </reaction>',
        ]
    out.append('    </listOfReactions>')
    out.append('  </model>')
    out.append('</sbml>')
    return "\n".join(out) + "\n"


WRITERS = {
    "crn": write_crn,
    "json": write_json,
    "dot": write_dot,
    "sbml": write_sbml_min,
}
