"""CLI main entry point."""

import sys
from pathlib import Path

import click

from unitary_branching import __version__
from unitary_branching.core.config import Config, RunConfig
from unitary_branching.core.errors import BranchingError
from unitary_branching.utils.logger import setup_logger

DEFAULT_CONFIG_PATH = Path.home() / '.unitary-branching' / 'config.yaml'


RING_OPTIONS = [
    click.option('--p', 'p', type=int, default=None, help='Residue characteristic (odd prime)'),
    click.option('--epsilon', type=int, default=None, help='Non-square unit (default: smallest)'),
    click.option('--N', 'N', type=int, default=None, help='Level: work in K/K_N'),
    click.option('--budget', type=int, default=None, help='Largest group to enumerate'),
    click.option('--cache-dir', type=click.Path(), default=None, help='Group cache root'),
    click.option('--out', type=click.Path(), default=None, help='Certificate file to write'),
    click.option('--verbose', is_flag=True, help='Verbose logging'),
    click.option('--config', 'config_path', type=click.Path(), default=None,
                 help='Custom config file'),
]


def ring_options(f):
    """Flags shared by the commands that build a ring."""
    for option in reversed(RING_OPTIONS):
        f = option(f)
    return f


def _load_config(config_path=None) -> Config:
    if config_path:
        return Config.load(Path(config_path))
    return Config.load_default()


def _prepare(command, config_path, verbose, p, epsilon, N, budget, cache_dir, out, **options):
    """Load config, set up logging and build the validated run parameters."""
    config_obj = _load_config(config_path)
    if verbose:
        config_obj.dev['verbose'] = True

    setup_logger(
        log_dir=Path(config_obj.paths.logs_dir).expanduser(),
        verbose=bool(config_obj.dev.get('verbose', False)),
    )

    if out:
        options['out'] = out
    run = RunConfig.from_config(
        config_obj,
        command,
        p=p,
        epsilon=epsilon,
        N=N,
        budget=budget,
        cache_dir=cache_dir,
        **options,
    )
    return config_obj, run


def _report(title, result):
    """Print the result block and exit 0 iff every claim passed."""
    click.echo()
    click.echo("=" * 60)
    click.secho(f"{title}: {result.status}",
                fg='green' if result.passed else 'yellow')
    click.echo("=" * 60)
    click.echo(f"  Claims:         {len(result.claims) - len(result.failed_claims)}"
               f"/{len(result.claims)} passed")
    click.echo(f"  Runtime:        {result.runtime_seconds:.2f}s")
    if result.output_path:
        click.echo(f"  Output:         {result.output_path}")

    for claim in result.failed_claims:
        click.secho(f"  FAILED [{claim.suite}] {claim.claim}", fg='red', err=True)

    sys.exit(0 if result.passed else 1)


def _fail(e: Exception, verbose: bool):
    if isinstance(e, BranchingError):
        click.secho(f"{type(e).__name__}: {e}", fg='red', err=True)
    else:
        click.secho(f"Fatal error: {e}", fg='red', err=True)
        if verbose:
            import traceback
            traceback.print_exc()
    sys.exit(1)


@click.group()
@click.version_option(version=__version__)
def cli():
    """Unitary branching - U(1,1) branching rules checked in K/K_N."""
    pass


@cli.command('enumerate')
@ring_options
def enumerate_cmd(p, epsilon, N, budget, cache_dir, out, verbose, config_path):
    """Enumerate K/K_N and report orders and index formulas."""
    try:
        from unitary_branching.core.orchestrator import VerificationOrchestrator

        config_obj, run = _prepare('enumerate', config_path, verbose, p, epsilon, N,
                                   budget, cache_dir, out)
        orchestrator = VerificationOrchestrator(config_obj, run)
        result = orchestrator.enumerate()

        summary = result.records[0]
        click.echo()
        click.echo(f"|K/K_{run.N}| = {summary['order']}  (p={run.p}, epsilon={summary['epsilon']})")
        for name, order in summary['quotient_orders'].items():
            click.echo(f"  {name:<12} {order}")
        for name, order in summary['subgroup_orders'].items():
            click.echo(f"  |{name}|{'':<{max(10 - len(name), 1)}} {order}")
        click.echo(f"  classes      {summary['class_count']}")

        _report("Enumeration completed", result)

    except Exception as e:
        _fail(e, verbose)


@cli.command()
@ring_options
@click.option('--chi', default='trivial',
              help='trivial, delta-ext, depth1-first, all, or exponents "a,b"')
@click.option('--all', 'all_chars', is_flag=True, help='Every character of T_0/T_N')
def branch(p, epsilon, N, budget, cache_dir, out, verbose, config_path, chi, all_chars):
    """Decompose V_chi^{K_N} into irreducibles."""
    try:
        from unitary_branching.core.orchestrator import VerificationOrchestrator

        config_obj, run = _prepare('branch', config_path, verbose, p, epsilon, N,
                                   budget, cache_dir, out)
        orchestrator = VerificationOrchestrator(config_obj, run)
        result = orchestrator.branch('all' if all_chars else chi)

        click.echo()
        for record in result.records:
            degrees = ' + '.join(str(c['degree']) for c in record['components'])
            click.echo(f"{record['chi']}: {degrees}")
            for component in record['components']:
                click.echo(f"    {component['label']}  (degree {component['degree']})")

        _report("Branching completed", result)

    except Exception as e:
        _fail(e, verbose)


@cli.command()
@click.argument('suites', nargs=-1)
@ring_options
@click.option('--trials', type=int, default=None, help='Random trials for hensel')
@click.option('--seed', type=int, default=None, help='Random seed')
@click.option('--workers', type=int, default=None, help='Suites run in parallel')
def verify(suites, p, epsilon, N, budget, cache_dir, out, verbose, config_path,
           trials, seed, workers):
    """Run verification suites (default: all)."""
    try:
        from unitary_branching.core.orchestrator import VerificationOrchestrator

        options = {}
        if N is not None:
            options['level'] = N
        if trials is not None:
            options['trials'] = trials
        if seed is not None:
            options['seed'] = seed

        config_obj, run = _prepare('verify', config_path, verbose, p, epsilon, N,
                                   budget, cache_dir, out, **options)
        if workers is not None:
            config_obj.verify['workers'] = workers

        orchestrator = VerificationOrchestrator(config_obj, run)
        result = orchestrator.verify(suites or ('all',))

        click.echo()
        current = None
        for claim in result.claims:
            if claim.suite != current:
                current = claim.suite
                click.secho(current, bold=True)
            mark = (click.style('pass', fg='green') if claim.passed
                    else click.style('FAIL', fg='red'))
            rung = '' if claim.rung == 'full' else f" [{claim.rung}]"
            click.echo(f"  {mark}  {claim.claim}{rung}")

        _report("Verification completed", result)

    except Exception as e:
        _fail(e, verbose)


@cli.group()
def config():
    """Manage configuration."""
    pass


@config.command()
@click.option('--config', 'config_path', type=click.Path(), default=None,
              help='Custom config file')
def show(config_path):
    """Show current configuration."""
    click.echo(_load_config(config_path).to_yaml())


@config.command()
@click.option('--config', 'config_path', type=click.Path(), default=None,
              help='Where to write the config file')
@click.option('--force', is_flag=True, help='Overwrite an existing file')
def init(config_path, force):
    """Write the default configuration file."""
    target = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
    if target.exists() and not force:
        click.secho(f"Config already exists: {target} (use --force)", fg='yellow', err=True)
        sys.exit(1)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(Config.defaults().to_yaml())
    click.secho(f"✓ Wrote {target}", fg='green')


@config.command()
def path():
    """Show config file path."""
    click.echo(str(DEFAULT_CONFIG_PATH))


@cli.group()
def cache():
    """Manage the group cache."""
    pass


def _cache_for(config_path, cache_dir):
    from unitary_branching.storage.cache import GroupCache

    config_obj = _load_config(config_path)
    root = Path(cache_dir or config_obj.paths.cache_dir).expanduser()
    return GroupCache(root)


@cache.command('list')
@click.option('--cache-dir', type=click.Path(), default=None, help='Group cache root')
@click.option('--config', 'config_path', type=click.Path(), default=None,
              help='Custom config file')
def list_entries(cache_dir, config_path):
    """List cached group tables."""
    try:
        group_cache = _cache_for(config_path, cache_dir)
        entries = group_cache.entries()
        if not entries:
            click.echo(f"Cache is empty: {group_cache.root}")
            return

        click.echo()
        click.echo(f"Cached tables in {group_cache.root}:")
        click.echo("=" * 80)
        for entry in entries:
            classes = 'classes' if entry['classes'] else ''
            click.echo(
                f"p={entry['p']} epsilon={entry['epsilon']} N={entry['N']}  "
                f"{entry['label']:<24} order={entry['order']:<10} {entry['bytes']:>10} B  {classes}"
            )

    except Exception as e:
        click.secho(f"Error reading cache: {e}", fg='red', err=True)
        sys.exit(1)


@cache.command()
@click.option('--cache-dir', type=click.Path(), default=None, help='Group cache root')
@click.option('--config', 'config_path', type=click.Path(), default=None,
              help='Custom config file')
def clear(cache_dir, config_path):
    """Delete every cached table."""
    try:
        removed = _cache_for(config_path, cache_dir).clear()
        click.secho(f"✓ Removed {removed} cached ring(s)", fg='green')
    except Exception as e:
        click.secho(f"Error clearing cache: {e}", fg='red', err=True)
        sys.exit(1)


@cli.group()
def history():
    """View verification history."""
    pass


def _state(config_path):
    from unitary_branching.storage.state import StateManager

    config_obj = _load_config(config_path)
    data_dir = Path(config_obj.paths.data_dir).expanduser()
    return StateManager(data_dir / "state.db")


@history.command()
@click.option('--last', type=int, default=10, help='Last N runs')
@click.option('--config', 'config_path', type=click.Path(), default=None,
              help='Custom config file')
def runs(last, config_path):
    """Show recent runs."""
    try:
        recent = _state(config_path).get_recent_runs(limit=last)

        if not recent:
            click.echo("No runs found")
            return

        click.echo()
        click.echo("Recent runs:")
        click.echo("=" * 80)

        for run in recent:
            status_color = 'green' if run['status'] == 'success' else 'red'
            click.secho(f"{run['run_date']} - {run['command']} - {run['status']}",
                        fg=status_color)
            click.echo(f"  p={run['p']} epsilon={run['epsilon']} N={run['level']}  "
                       f"claims: {run['claims_total'] - run['claims_failed']}"
                       f"/{run['claims_total']} passed")
            if run['output_path']:
                click.echo(f"  Output: {run['output_path']}")
            click.echo()

    except Exception as e:
        click.secho(f"Error fetching history: {e}", fg='red', err=True)
        sys.exit(1)


@history.command()
@click.option('--limit', type=int, default=20, help='Max results')
@click.option('--config', 'config_path', type=click.Path(), default=None,
              help='Custom config file')
def failed(limit, config_path):
    """Show failed claims across runs."""
    try:
        claims = _state(config_path).get_failed_claims(limit=limit)

        if not claims:
            click.echo("No failed claims")
            return

        click.echo()
        click.echo("Failed claims:")
        click.echo("=" * 80)
        for claim in claims:
            click.secho(f"[{claim['suite']}] {claim['claim']}", fg='red')
            click.echo(f"  {claim['run_date']} - {claim['command']} (run {claim['run_id']})")
            if isinstance(claim.get('detail'), dict) and claim['detail'].get('error'):
                click.echo(f"  {claim['detail']['error']}")

    except Exception as e:
        click.secho(f"Error fetching history: {e}", fg='red', err=True)
        sys.exit(1)


if __name__ == '__main__':
    cli()
