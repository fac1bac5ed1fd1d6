"""
`homore` command line: every verb builds a Command and hands it to commands.run().

Canonical results go to stdout, diagnostics and errors to stderr. Exit codes:
0 success, 1 domain error, 2 parse/usage error, 3 property check failed.
"""
from __future__ import annotations

import functools

import click

from homore.commands import Command, Verb, run
from homore.config import configure_logging, settings


def _ring_options(f):
    options = [
        click.option("--algebra", help="Definition file, or builtin name (octonions, quaternions, truncated4, ...)."),
        click.option("--alpha", type=click.Choice(["zero", "identity"]), help="Replace the twisting map."),
        click.option("--yau", metavar="MATRIX", help="Yau-twist the algebra by this endomorphism."),
        click.option("--octonions", is_flag=True, help="Work in the octonions directly (e0..e7)."),
        click.option("--weyl", is_flag=True, help="Work in the octonionic Weyl algebra (e0..e7, Y, X)."),
        click.option("--sigma", metavar="MATRIX", help="Ore extension endomorphism, rows separated by ';'."),
        click.option("--sigma-inverse", metavar="MATRIX", help="Declared inverse of --sigma."),
        click.option("--delta", metavar="MATRIX", help="Ore extension sigma-derivation."),
        click.option("--alpha-matrix", metavar="MATRIX", help="Twisting map of the Ore extension."),
    ]
    return functools.reduce(lambda acc, opt: opt(acc), reversed(options), f)


def _sampling_options(f):
    options = [
        click.option("--samples", type=int, default=None, help=f"Random samples (default {settings.samples})."),
        click.option("--degree", type=int, default=None, help=f"Degree bound (default {settings.degree_bound})."),
        click.option("--seed", type=int, default=None, help=f"Random seed (default {settings.seed})."),
    ]
    return functools.reduce(lambda acc, opt: opt(acc), reversed(options), f)


def _module_options(f):
    f = click.option("--alpha", type=click.Choice(["zero", "identity"]), help="Replace the ring's twisting map.")(f)
    f = click.option("--algebra", help="Override the ring named in the module file.")(f)
    return click.option("--module", required=True, help="Module definition file.")(f)


def _dispatch(verb: Verb, args, options: dict) -> None:
    result = run(Command(verb, tuple(args), options))
    if result.stdout:
        click.echo(result.stdout, nl=False)
    if result.stderr:
        click.echo(result.stderr, err=True)
    click.get_current_context().exit(result.exit_code)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--log-level", default=None, help="Logging level for diagnostics on stderr.")
def cli(log_level):
    """Exact arithmetic for hom-associative algebras, Ore extensions and hom-modules."""
    configure_logging(log_level)


# ----------------------------------------------------------------
# 🔹 Arithmetic
# ----------------------------------------------------------------
@cli.command()
@click.argument("x")
@click.argument("y")
@_ring_options
def mul(x, y, **options):
    """Product X*Y, bracketing as written."""
    _dispatch(Verb.MUL, (x, y), options)


@cli.command()
@click.argument("x")
@click.argument("y")
@_ring_options
def add(x, y, **options):
    """Sum X+Y."""
    _dispatch(Verb.ADD, (x, y), options)


@cli.command()
@click.argument("x")
@click.argument("y")
@click.argument("z")
@_ring_options
def assoc(x, y, z, **options):
    """Associator (XY)Z - X(YZ)."""
    _dispatch(Verb.ASSOC, (x, y, z), options)


# ----------------------------------------------------------------
# 🔹 Property checks (exit 3 on failure)
# ----------------------------------------------------------------
@cli.command()
@_ring_options
@_sampling_options
def homcheck(**options):
    """Hom-associativity: exhaustive on a basis, sampled in an Ore extension."""
    _dispatch(Verb.HOMCHECK, (), options)


@cli.command()
@click.argument("element", required=False)
@_ring_options
def nucleus(element, **options):
    """Nucleus subspaces, or nucleus membership of ELEMENT."""
    _dispatch(Verb.NUCLEUS, (element,) if element else (), options)


@cli.command()
@_module_options
def modcheck(**options):
    """Hom-module axioms on basis triples."""
    _dispatch(Verb.MODCHECK, (), options)


# ----------------------------------------------------------------
# 🔹 Ore extensions
# ----------------------------------------------------------------
@cli.command("pi")
@click.option("--i", "i", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--show", is_flag=True, help="Print the symbolic word sum.")
@click.option("--bruteforce", is_flag=True, help="Evaluate by enumerating words.")
@click.argument("coefficient", required=False)
@_ring_options
def pi_command(coefficient, **options):
    """pi_i^m as a word sum, or applied to COEFFICIENT."""
    _dispatch(Verb.PI, (coefficient,) if coefficient else (), options)


@cli.command()
@click.argument("poly")
@click.option(
    "--direction",
    type=click.Choice(["right_to_left", "left_to_right"]),
    default="right_to_left",
    show_default=True,
)
@_ring_options
def convert(poly, **options):
    """Rewrite between sum a_i X^i and sum X^i b_i."""
    _dispatch(Verb.CONVERT, (poly,), options)


@cli.command()
@click.argument("poly")
@_ring_options
def opiso(poly, **options):
    """Image of POLY (read in the opposite extension) under the opposite isomorphism."""
    _dispatch(Verb.OPISO, (poly,), options)


@cli.command()
@click.argument("poly")
@click.option("--gen", multiple=True, help="Generator of the right ideal (repeatable).")
@click.option("--trace", is_flag=True, help="Print every reduction step.")
@_ring_options
def reduce(poly, **options):
    """Reduce POLY by right multiples of the generators."""
    _dispatch(Verb.REDUCE, (poly,), options)


# ----------------------------------------------------------------
# 🔹 Hom-modules
# ----------------------------------------------------------------
@cli.command()
@click.argument("vectors", nargs=-1, required=True)
@_module_options
def quotient(vectors, **options):
    """Quotient of the module by the span of VECTORS, as a module file."""
    _dispatch(Verb.QUOTIENT, vectors, options)


@cli.command()
@click.argument("vectors", nargs=-1, required=True)
@_module_options
def closure(vectors, **options):
    """Hom-submodule generated by VECTORS."""
    _dispatch(Verb.CLOSURE, vectors, options)


@cli.command()
@click.argument("generator_sets", nargs=-1, required=True)
@_module_options
def chain(generator_sets, **options):
    """Stabilization index of the chain generated by nested GENERATOR_SETS."""
    _dispatch(Verb.CHAIN, generator_sets, options)


def main() -> None:
    cli(prog_name="homore")


if __name__ == "__main__":
    main()
