"""Command-line driver.

Exit codes: 0 ok, 1 bad input, 2 enumeration truncated (output still
written), 3 numerical failure during condensation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .condense import CondensationError, NumericalError, condense_reactions
from .enumerator import EnumConfig, EnumerationError, enumerate_network
from .kernel import ParseError, parse_input
from .kinetics import KineticsConfig
from .model import ModelError
from .moves import MoveConfig
from .writers import write_crn, write_dot, write_json, write_sbml_min

EXIT_OK, EXIT_INPUT, EXIT_TRUNCATED, EXIT_NUMERIC = 0, 1, 2, 3

log = logging.getLogger("dsdenum")

# flag name -> KineticsConfig field
KINETIC_FLAGS = {
    "k-bind": "k_bind_bi",
    "zip-prefactor": "zip_prefactor",
    "loop-prefactor": "loop_prefactor_a",
    "open-exponent": "open_exponent_a",
    "bm3-init": "bm3_init_a",
    "bm3-step": "bm3_step_b",
    "bm4-init": "bm4_init_a",
    "bm4-step": "bm4_step_b",
    "remote-alpha": "remote_alpha",
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dsdenum",
        description="Enumerate domain-level strand-displacement reactions.")
    p.add_argument("input", help="input file ('-' for stdin)")
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p.add_argument("-f", "--format", choices=("crn", "json", "dot", "sbml"), default="crn")
    p.add_argument("-c", "--condense", action="store_true",
                   help="write the condensed network of resting sets")
    p.add_argument("--rates", action=argparse.BooleanOptionalAction, default=False,
                   help="append rate constants to CRN lines")
    p.add_argument("--release-cutoff", type=int, default=MoveConfig.release_cutoff,
                   help="helices shorter than this may open (nt)")
    p.add_argument("--max-complexes", type=int, default=EnumConfig.max_complexes)
    p.add_argument("--max-reactions", type=int, default=EnumConfig.max_reactions)
    p.add_argument("--no-remote", action="store_true", help="disable remote-toehold 3-way moves")
    p.add_argument("--no-four-way", action="store_true", help="disable 4-way branch migration")
    p.add_argument("--config", help="JSON file with option overrides (same names as the flags)")
    g = p.add_argument_group("kinetic constants")
    for flag, fieldname in KINETIC_FLAGS.items():
        g.add_argument(f"--{flag}", type=float, dest=fieldname, default=None)
    p.add_argument("-v", "--verbose", action="count", default=0)
    return p


def _apply_config_file(args: argparse.Namespace, path: str) -> None:
    with open(path, encoding="utf-8") as fh:
        overrides = json.load(fh)
    if not isinstance(overrides, dict):
        raise ValueError("config file must hold a JSON object")
    for key, value in overrides.items():
        attr = KINETIC_FLAGS.get(key, key).replace("-", "_")
        if not hasattr(args, attr):
            raise ValueError(f"unknown config key {key!r}")
        setattr(args, attr, value)


def config_from_args(args: argparse.Namespace) -> EnumConfig:
    kin = {f: getattr(args, f) for f in KINETIC_FLAGS.values() if getattr(args, f) is not None}
    return EnumConfig(
        max_complexes=args.max_complexes,
        max_reactions=args.max_reactions,
        moves=MoveConfig(release_cutoff=args.release_cutoff,
                         remote_toehold=not args.no_remote,
                         four_way=not args.no_four_way),
        kinetics=KineticsConfig(**kin),
    )


def run(args: argparse.Namespace) -> tuple[str, int]:
    """Return (document, exit code); raises on input or numerical errors."""
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    spec = parse_input(text)
    if not spec.complexes:
        raise ParseError("input defines no complexes")
    cfg = config_from_args(args)
    net = enumerate_network(list(spec.complexes.values()), cfg)
    code = EXIT_TRUNCATED if net.truncated else EXIT_OK
    condensed = condense_reactions(net) if args.condense or args.format == "json" else None
    target = condensed if args.condense else net
    if args.format == "crn":
        doc = write_crn(target, rates=args.rates)
    elif args.format == "json":
        doc = write_json(condensed) if args.condense else write_json(net, condensed)
    elif args.format == "dot":
        doc = write_dot(target)
    else:
        doc = write_sbml_min(target)
    return doc, code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        if args.config:
            _apply_config_file(args, args.config)
        doc, code = run(args)
    except (NumericalError, CondensationError) as e:
        print(f"numerical error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ParseError, ModelError, EnumerationError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)
    if code == EXIT_TRUNCATED:
        print("warning: enumeration truncated at the configured limits; "
              "unexplored complexes and the reactions producing them were dropped", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
