#!/usr/bin/env python3
"""
Interface de linha de comando para o MMBeamSim
"""

import logging
import platform
import sys
from typing import List, Optional, Tuple

import click
import numpy as np
import pandas as pd
import psutil
import scipy
from dotenv import load_dotenv

from .. import __version__
from ..beamforming.architectures import ALL_ARCHITECTURES, Architecture
from ..core.acceptance import run_acceptance
from ..core.config import SCENARIOS, apply_overrides, env_default, load_config
from ..core.errors import ConfigurationError
from ..core.pipeline import SimulationPipeline, optimal_threads
from ..core.validation import DEFAULT_INSTANCES, run_checks
from ..power.model import power_breakdown, rf_chain_counts
from ..report.writer import emit_csv, emit_summary_csv

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(verbose: bool, quiet: bool) -> None:
    """Nível de log: --quiet > --verbose > MMBEAMSIM_LOG_LEVEL > INFO."""
    if quiet:
        level = logging.ERROR
    elif verbose:
        level = logging.DEBUG
    else:
        level = getattr(logging, str(env_default("LOG_LEVEL", "INFO")).upper(), logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def _parse_archs(archs: Optional[str]) -> Optional[List[str]]:
    if archs is None:
        return None
    return [Architecture.from_tag(tag).value for tag in archs.split(",") if tag.strip()]


def _env_threads() -> Optional[int]:
    value = env_default("THREADS")
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        raise ConfigurationError(f"MMBEAMSIM_THREADS inválido: {value}")


@click.group()
@click.version_option(version=__version__, prog_name="MMBeamSim")
def cli():
    """MMBeamSim - Simulador de beamforming MU-MIMO em ondas milimétricas."""
    load_dotenv()


@cli.command()
@click.option("--config", "-c", "config_path", type=click.Path(),
              help="Arquivo JSON de configuração (padrão: valores internos)")
@click.option("--out", "-o", help="CSV de saída (padrão: results/sweep.csv)")
@click.option("--seed", type=int, help="Semente base")
@click.option("--drops", type=int, help="Drops Monte Carlo por ponto")
@click.option("--archs", help="Arquiteturas separadas por vírgula (ex.: cm-fd,pzf-hy,sw)")
@click.option("--threads", type=int, help="Número de threads (padrão: auto)")
@click.option("--scenario", type=click.Choice(list(SCENARIOS) + ["custom"]),
              help="Varredura predefinida")
@click.option("--verbose", "-v", is_flag=True, help="Saída detalhada")
@click.option("--quiet", "-q", is_flag=True, help="Saída silenciosa")
def sweep(config_path: Optional[str], out: Optional[str], seed: Optional[int],
          drops: Optional[int], archs: Optional[str], threads: Optional[int],
          scenario: Optional[str], verbose: bool, quiet: bool):
    """
    Executa a varredura Monte Carlo e grava os CSVs de amostras e de resumo.

    \b
    Exemplos:

    \b
    # Varredura padrão (ASE/GEE versus N_T)
    mmbeamsim sweep

    \b
    # Versus N_R, só arquiteturas híbridas, 50 drops
    mmbeamsim sweep --scenario rx-sweep --archs pzf-hy,sw-phsh,sw --drops 50
    """
    setup_logging(verbose, quiet)

    try:
        config = load_config(config_path)
        config = apply_overrides(
            config,
            output_path=out,
            base_seed=seed,
            drops=drops,
            architectures=_parse_archs(archs),
            threads=threads if threads is not None else (config.threads or _env_threads()),
            scenario=scenario,
        )

        if not quiet:
            click.echo("🚀 Inicializando MMBeamSim...")
            click.echo(f"📡 Arquiteturas: {', '.join(config.architectures)}")
            click.echo(f"📐 N_T={config.n_t_list} N_R={config.n_r_list} M={config.m_streams} "
                       f"K={config.k_users} | {config.drops} drops")
        pipeline = SimulationPipeline(config)
        table = pipeline.run_sweep(progress=not quiet)

        samples_file = emit_csv(table, config.output_path)
        summary_file = emit_summary_csv(table, config.output_path)
    except ConfigurationError as e:
        click.echo(f"❌ Configuração inválida: {e}", err=True)
        sys.exit(1)
    except OSError as e:
        click.echo(f"❌ Erro de E/S: {e}", err=True)
        sys.exit(1)
    except KeyboardInterrupt:
        click.echo("\n⏹️  Varredura interrompida pelo usuário")
        sys.exit(1)

    flagged = sum(1 for s in table.samples if not s.valid)
    if not quiet:
        click.echo(f"✅ Varredura concluída em {pipeline.processing_stats['sweep']:.2f}s")
        click.echo(f"📊 Amostras: {len(table)} | Sinalizadas: {flagged}")
        click.echo(f"  📄 {samples_file}")
        click.echo(f"  📄 {summary_file}")
        if verbose:
            click.echo("\n📈 Resumo:")
            click.echo(table.summary().to_string(index=False))


@cli.command("power-table")
@click.option("--n-t", "n_t", type=int, multiple=True, default=(100,), show_default=True,
              help="Antenas na BS (repetível)")
@click.option("--n-r", "n_r", type=int, multiple=True, default=(30,), show_default=True,
              help="Antenas no terminal (repetível)")
@click.option("--k", "k_users", type=int, default=10, show_default=True, help="Usuários")
@click.option("--m", "m_streams", type=int, default=1, show_default=True, help="Fluxos por usuário")
@click.option("--config", "-c", "config_path", type=click.Path(),
              help="Arquivo JSON com as constantes de potência")
def power_table(n_t: Tuple[int, ...], n_r: Tuple[int, ...], k_users: int, m_streams: int,
                config_path: Optional[str]):
    """Consumo de circuito de TX e RX de cada arquitetura (W)."""
    setup_logging(False, True)
    try:
        config = load_config(config_path)
        rows = []
        for arch in ALL_ARCHITECTURES:
            for nt in n_t:
                for nr in n_r:
                    counts = rf_chain_counts(arch, nt, nr, k_users, m_streams)
                    breakdown = power_breakdown(arch, nt, nr, counts["n_t_rf"], counts["n_r_rf"],
                                                config.synthesis.n_q, config.power)
                    rows.append({
                        "arch": arch.value,
                        "n_t": nt,
                        "n_r": nr,
                        "n_t_rf": counts["n_t_rf"],
                        "n_r_rf": counts["n_r_rf"],
                        "p_txc_w": breakdown["tx"]["total"],
                        "p_rxc_w": breakdown["rx"]["total"],
                    })
    except ConfigurationError as e:
        click.echo(f"❌ Configuração inválida: {e}", err=True)
        sys.exit(1)

    click.echo(f"⚡ Potência de circuito (K={k_users}, M={m_streams}, N_Q={config.synthesis.n_q}):")
    click.echo(pd.DataFrame(rows).to_string(index=False, float_format=lambda v: f"{v:.3f}"))


@cli.command()
@click.option("--instances", type=int, default=DEFAULT_INSTANCES, show_default=True,
              help="Instâncias aleatórias por invariante")
@click.option("--seed", type=int, default=0, show_default=True, help="Semente")
@click.option("--verbose", "-v", is_flag=True, help="Saída detalhada")
def validate(instances: int, seed: int, verbose: bool):
    """Verifica os invariantes numéricos em instâncias aleatórias pequenas."""
    setup_logging(verbose, not verbose)
    click.echo(f"🔍 Validando invariantes ({instances} instâncias cada)...")
    results = run_checks(instances=instances, seed=seed)
    for result in results:
        click.echo(f"  {'✅' if result.passed else '❌'} {result.name}: {result.detail}")

    failed = [r for r in results if not r.passed]
    if failed:
        click.echo(f"❌ {len(failed)} de {len(results)} invariantes falharam", err=True)
        sys.exit(1)


@cli.command()
@click.option("--config", "-c", "config_path", type=click.Path(),
              help="Arquivo JSON de configuração (padrão: valores internos)")
@click.option("--drops", type=int, default=200, show_default=True, help="Drops por ponto")
@click.option("--seed", type=int, help="Semente base")
@click.option("--threads", type=int, help="Número de threads (padrão: auto)")
@click.option("--strict", is_flag=True, help="Sai com código 1 se alguma tendência não se reproduzir")
@click.option("--verbose", "-v", is_flag=True, help="Saída detalhada")
def acceptance(config_path: Optional[str], drops: int, seed: Optional[int],
               threads: Optional[int], strict: bool, verbose: bool):
    """Mede as tendências de ordenação entre arquiteturas na escala completa (M=1)."""
    setup_logging(verbose, not verbose)
    try:
        config = load_config(config_path)
        config = apply_overrides(
            config,
            base_seed=seed,
            threads=threads if threads is not None else (config.threads or _env_threads()),
        )
        click.echo(f"🎯 Tendências com K={config.k_users}, P_T={config.p_t_dbw} dBW, {drops} drops")
        results = run_acceptance(config, drops, progress=not verbose)
    except ConfigurationError as e:
        click.echo(f"❌ Configuração inválida: {e}", err=True)
        sys.exit(1)
    except KeyboardInterrupt:
        click.echo("\n⏹️  Verificação interrompida pelo usuário")
        sys.exit(1)

    for result in results:
        click.echo(f"  {'✅' if result.passed else '⚠️ '} {result.name} "
                   f"(margem {result.margin:.3g})")
        click.echo(f"      {result.detail}")

    missed = [r for r in results if not r.passed]
    if missed:
        click.echo(f"⚠️  {len(missed)} de {len(results)} tendências não reproduzidas")
        if strict:
            sys.exit(1)
    else:
        click.echo(f"✅ {len(results)} tendências reproduzidas")
    click.echo(f"✅ {len(results)} invariantes verificados")


@cli.command()
def info():
    """Mostra informações do sistema e da configuração padrão."""
    show_system_info()


def show_system_info():
    """Mostra informações detalhadas do sistema."""
    click.echo("SISTEMA - Informações do sistema:")
    click.echo(f"  SO: {platform.system()} {platform.release()}")
    click.echo(f"  Python: {platform.python_version()}")
    click.echo(f"  CPU: {psutil.cpu_count(logical=False)} núcleos físicos, "
               f"{psutil.cpu_count(logical=True)} lógicos")
    click.echo(f"  RAM: {psutil.virtual_memory().total / (1024**3):.1f} GB")
    click.echo(f"  Threads padrão: {optimal_threads()}")

    click.echo("\n🧮 Bibliotecas numéricas:")
    click.echo(f"  NumPy: {np.__version__}")
    click.echo(f"  SciPy: {scipy.__version__}")
    click.echo(f"  pandas: {pd.__version__}")

    click.echo("\n📡 Arquiteturas disponíveis:")
    for arch in ALL_ARCHITECTURES:
        kind = "totalmente digital" if arch.fully_digital else "restrita em hardware"
        click.echo(f"  {arch.value}: {kind}")

    click.echo("\n🗺️  Cenários:")
    for name, preset in SCENARIOS.items():
        click.echo(f"  {name}: N_T={preset['n_t_list']} N_R={preset['n_r_list']}")


def entry_point():
    """Ponto de entrada para o executável."""
    cli()


if __name__ == "__main__":
    entry_point()
