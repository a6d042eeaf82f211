# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Command-line interface for the Laplace cascade toolkit.

Provides CLI commands for:
- Laplace invariants and invariant chains of the Verhulst master system
- The closed-form solution (smooth and point-mass initial data)
- Monte-Carlo and upwind oracles, and their comparison with the closed form
- The Dini transform demonstration
- The Excel report

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""

import functools
import json
import logging
import sys
from pathlib import Path

import click

from ..algebra.rational import parse_rat, set_degree_cap
from ..config import load_config
from ..errors import CascadeError, classify_error
from ..reporting.writers import write_text

logger = logging.getLogger(__name__)


def param_options(func):
    """--p1/--p2/--q2/--nu as exact rational strings."""
    @click.option('--p1', default='1', show_default=True, help='Linear growth rate p1 > 0')
    @click.option('--p2', required=True, help='Quadratic coefficient p2 < 0')
    @click.option('--q2', required=True, help='Noise amplitude q2, 0 < q2 < |p2|')
    @click.option('--nu', default=None, help='Noise flip rate nu > 0 (switching frequency 2 nu)')
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)
    return wrapper


def _user(p1, p2, q2, nu):
    from ..main import parse_user_params
    if nu is None:
        raise click.UsageError("Missing option '--nu'.")
    return parse_user_params(p1, p2, q2, nu)


def _init(text):
    from ..verhulst.initial import parse_initial
    return parse_initial(text)


def _tau_path(out: str, tau: float) -> str:
    """results.csv -> results_tau0.5.csv"""
    path = Path(out)
    return str(path.with_name(f"{path.stem}_tau{tau:g}{path.suffix}"))


def _emit(ctx, output, label: str, long: bool = False) -> None:
    """Render output and write it to --out or stdout.

    Per-tau CSV parts go to one file each, or to stdout separated by blank lines.
    """
    settings = ctx.obj
    parts = output.render_parts(settings['format'], settings['digits'], long)
    out = settings['out']
    if len(parts) == 1:
        paths = [write_text(parts[0][1], out)] if out else []
    else:
        paths = [write_text(text, _tau_path(out, tau)) for tau, text in parts] if out else []
    if not out:
        click.echo("\n".join(text for _, text in parts), nl=False)
    click.echo(click.style(f"✓ {label}" + (f": {', '.join(paths)}" if paths else ""), fg='green'),
               err=True)


def _fail(error: Exception, operation: str):
    """Report an error and exit with its family's code."""
    error = classify_error(error, operation)
    click.echo(click.style(f"✗ Error: {error.message}", fg='red'), err=True)
    logger.exception(f"Error in {operation}")
    sys.exit(error.exit_code())


def run_command(operation: str):
    """Map CascadeError and friends onto exit codes 2/3."""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except (click.ClickException, click.exceptions.Exit):
                raise
            except Exception as e:
                _fail(e, operation)
        return wrapper
    return decorator


@click.group()
@click.option('--debug', is_flag=True, help='Enable debug logging')
@click.option('--config', type=click.Path(), help='Path to config file')
@click.option('--out', type=click.Path(), help='Write primary output to this file (default: stdout)')
@click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), help='Output format')
@click.option('--seed', type=int, help='Random seed for Monte-Carlo runs')
@click.option('--threads', type=int, help='Worker threads for Monte-Carlo batches')
@click.pass_context
def cli(ctx, debug, config, out, fmt, seed, threads):
    """Laplace cascade, closed-form Verhulst solution and its numerical oracles."""
    try:
        settings = load_config(config)
    except (OSError, ValueError, CascadeError) as e:
        click.echo(click.style(f"✗ Error: cannot load config: {e}", fg='red'), err=True)
        sys.exit(2)

    # Set up logging
    log_level = logging.DEBUG if debug else getattr(logging, str(settings.get('logging.level')).upper(),
                                                    logging.INFO)
    logging.basicConfig(level=log_level, format=settings.get('logging.format'), stream=sys.stderr)

    # flags override file and environment
    if fmt:
        settings.set('output.format', fmt)
    if seed is not None:
        settings.set('mc.seed', seed)
    if threads is not None:
        settings.set('mc.threads', threads)

    set_degree_cap(int(settings.get('algebra.degree_cap')))
    logger.info(f"Resolved config: {json.dumps(settings.as_dict(), sort_keys=True)}")

    ctx.obj = {
        'config': settings,
        'format': settings.get('output.format'),
        'digits': int(settings.get('output.digits')),
        'out': out,
    }


@cli.command()
@param_options
@click.pass_context
@run_command("invariants")
def invariants(ctx, p1, p2, q2, nu):
    """Laplace invariants h and k of the master system."""
    from ..main import run_invariants
    _emit(ctx, run_invariants(_user(p1, p2, q2, nu)), "Invariants computed")


@cli.command()
@param_options
@click.option('--steps', type=int, help='Step cap per direction')
@click.pass_context
@run_command("chain")
def chain(ctx, p1, p2, q2, nu, steps):
    """Forward and backward invariant chains."""
    from ..main import run_chain
    steps = steps if steps is not None else int(ctx.obj['config'].get('cascade.max_steps'))
    _emit(ctx, run_chain(_user(p1, p2, q2, nu), steps), "Chain built")


@cli.command()
@param_options
@click.option('--init', 'init_text', required=True,
              help='Initial density: delta:x=.. | uniform:a=..,b=.. | bump:center=..,width=.. | '
                   'analytic:f=<expr in x>,a=..,b=..')
@click.option('--tau', 'taus', type=float, multiple=True, required=True, help='Output time (repeatable)')
@click.option('--points', type=int, default=200, show_default=True, help='Number of x points')
@click.option('--x-max', type=float, help='Largest x (default 1.5/(|p2|-q2) in scaled units)')
@click.option('--long', 'long_table', is_flag=True,
              help='One tau,x,W,W1,reachable CSV table instead of an x,W,W1 table per tau')
@click.pass_context
@run_command("exact")
def exact(ctx, p1, p2, q2, nu, init_text, taus, points, x_max, long_table):
    """Closed-form W, W1 (requires nu = p1)."""
    from ..main import default_x_grid, run_exact
    user = _user(p1, p2, q2, nu)
    xs = default_x_grid(user.dimensionless(), points, x_max) if x_max else None
    _emit(ctx, run_exact(user, _init(init_text), taus, xs, points), "Closed form evaluated",
          long=long_table)


@cli.command()
@param_options
@click.option('--x-star', type=float, required=True, help='Initial point mass location')
@click.option('--tau', 'taus', type=float, multiple=True, required=True, help='Output time (repeatable)')
@click.option('--points', type=int, default=200, show_default=True, help='Number of x points')
@click.option('--x-max', type=float, help='Largest x (default 1.5/(|p2|-q2) in scaled units)')
@click.option('--long', 'long_table', is_flag=True,
              help='One tau,x,W,W1,reachable CSV table instead of an x,W,W1 table per tau')
@click.pass_context
@run_command("delta")
def delta(ctx, p1, p2, q2, nu, x_star, taus, points, x_max, long_table):
    """Closed form for point-mass initial data (requires nu = p1)."""
    from ..main import default_x_grid, run_delta
    user = _user(p1, p2, q2, nu)
    xs = default_x_grid(user.dimensionless(), points, x_max) if x_max else None
    _emit(ctx, run_delta(user, x_star, taus, xs, points), "Point-mass solution evaluated",
          long=long_table)


@cli.command()
@param_options
@click.option('--init', 'init_text', required=True, help='Initial density (see exact)')
@click.option('--tau', 'taus', type=float, multiple=True, required=True, help='Checkpoint (repeatable)')
@click.option('--paths', type=int, help='Number of paths')
@click.option('--batch-size', type=int, help='Paths per batch')
@click.option('--bins', type=int, help='Emit a histogram with this many bins instead of samples')
@click.pass_context
@run_command("mc")
def mc(ctx, p1, p2, q2, nu, init_text, taus, paths, batch_size, bins):
    """Monte-Carlo simulation with telegraph noise."""
    from ..main import run_mc
    cfg = ctx.obj['config']
    output = run_mc(_user(p1, p2, q2, nu), _init(init_text), taus,
                    paths=paths or int(cfg.get('mc.paths')),
                    seed=int(cfg.get('mc.seed')),
                    batch_size=batch_size or int(cfg.get('mc.batch_size')),
                    threads=int(cfg.get('mc.threads')), bins=bins)
    _emit(ctx, output, "Simulation finished")


@cli.command()
@param_options
@click.option('--init', 'init_text', required=True, help='Initial density (see exact)')
@click.option('--tau', 'taus', type=float, multiple=True, required=True, help='Checkpoint (repeatable)')
@click.option('--cells', type=int, help='Grid cells')
@click.option('--cfl', type=float, help='CFL number')
@click.option('--nu-ratio', help='nu/p1; overrides --nu')
@click.pass_context
@run_command("pde")
def pde(ctx, p1, p2, q2, nu, init_text, taus, cells, cfl, nu_ratio):
    """Upwind solution of the master equations for any flip rate."""
    from ..main import run_pde
    cfg = ctx.obj['config']
    if nu_ratio is not None:
        nu = str(parse_rat(nu_ratio) * parse_rat(p1))
    output = run_pde(_user(p1, p2, q2, nu), _init(init_text), taus,
                     cells=cells or int(cfg.get('pde.cells')),
                     cfl=cfl or float(cfg.get('pde.cfl')),
                     margin=float(cfg.get('pde.margin')))
    _emit(ctx, output, "Upwind solve finished")


@cli.command()
@param_options
@click.option('--mode', type=click.Choice(['exact-vs-mc', 'exact-vs-pde']), default='exact-vs-mc',
              show_default=True)
@click.option('--init', 'init_text', required=True, help='Initial density (see exact)')
@click.option('--tau', 'taus', type=float, multiple=True, required=True, help='Checkpoint (repeatable)')
@click.option('--paths', type=int, help='Monte-Carlo paths')
@click.option('--cells', type=int, help='Grid cells')
@click.option('--cfl', type=float, help='CFL number')
@click.pass_context
@run_command("compare")
def compare(ctx, p1, p2, q2, nu, mode, init_text, taus, paths, cells, cfl):
    """Distance between the closed form and a numerical oracle."""
    from ..main import run_compare
    cfg = ctx.obj['config']
    # the closed form exists only at nu = p1
    nu = nu if nu is not None else p1
    ctx.obj['format'] = 'json'
    output = run_compare(_user(p1, p2, q2, nu), mode, _init(init_text), taus,
                         paths=paths or int(cfg.get('mc.paths')),
                         seed=int(cfg.get('mc.seed')),
                         batch_size=int(cfg.get('mc.batch_size')),
                         threads=int(cfg.get('mc.threads')),
                         cells=cells or int(cfg.get('pde.cells')),
                         cfl=cfl or float(cfg.get('pde.cfl')),
                         margin=float(cfg.get('pde.margin')),
                         epsabs=float(cfg.get('quadrature.epsabs')),
                         limit=int(cfg.get('quadrature.limit')))
    _emit(ctx, output, "Comparison finished")


@cli.command()
@click.option('--demo', is_flag=True, help='Run the randomised suite')
@click.option('--phi', help='phi(a, b), e.g. "a*b - b^2"')
@click.option('--psi', help='psi(y, z)')
@click.option('--theta', help='theta(y)')
@click.option('--trials', type=int, default=50, show_default=True)
@click.option('--max-degree', type=int, default=4, show_default=True)
@click.pass_context
@run_command("dini")
def dini(ctx, demo, phi, psi, theta, trials, max_degree):
    """Dini transform: build u from (phi, psi, theta) and check L u = 0."""
    from ..main import run_dini
    if not demo and phi is None and psi is None and theta is None:
        raise click.UsageError("Give --demo or at least one of --phi/--psi/--theta.")
    ctx.obj['format'] = 'json'
    output = run_dini(demo=demo, phi=phi, psi=psi, theta=theta, trials=trials,
                      max_degree=max_degree, seed=int(ctx.obj['config'].get('mc.seed')))
    if not output.payload.get('all_zero'):
        click.echo(click.style("✗ Nonzero residual found", fg='red'), err=True)
    _emit(ctx, output, "Dini check finished")


@cli.command()
@param_options
@click.option('--multiples', type=int, default=4, show_default=True,
              help='List chains for nu = m p1, m = 1..multiples')
@click.option('--output', type=click.Path(), help='Output file path')
@click.pass_context
@run_command("report")
def report(ctx, p1, p2, q2, nu, multiples, output):
    """Generate the Excel cascade report."""
    from ..reporting.excel import generate_report
    nu = nu if nu is not None else p1
    click.echo("Generating report...", err=True)
    path = generate_report(_user(p1, p2, q2, nu), output or ctx.obj['out'],
                           chain_multiples=multiples,
                           max_steps=int(ctx.obj['config'].get('cascade.max_steps')))
    click.echo(click.style(f"✓ Report generated: {path}", fg='green'), err=True)


@cli.command()
@click.pass_context
def show_config(ctx):
    """Show the resolved configuration."""
    click.echo(json.dumps(ctx.obj['config'].as_dict(), indent=2, sort_keys=True))


if __name__ == '__main__':
    cli()
