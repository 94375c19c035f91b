"""
CLI command for the decoding-region breach.
"""
from typing import Optional
import click
import numpy as np

from app.breach.service import baseline_chain, build_breach_ensemble, guessing_chain
from app.core.output import emit, output_options
from app.gf2_codes.models import ToeplitzHash
from app.gf2_codes.service import make_code


@click.command("counterexample")
@click.option("--code", "code_name", default="repetition3", show_default=True, help="hamming74, repetitionN, identityN or random:N:K:SEED")
@click.option("--key-bits", type=click.IntRange(min=0), default=None, help="Hash L to this many bits with a seeded Toeplitz hash")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed of the Toeplitz hash")
@click.option("--baseline", is_flag=True, help="Adversary observation independent of S")
@output_options
def counterexample_command(code_name, key_bits: Optional[int], seed, baseline, fmt, precision):
    """Guessing chain p1(S) <= p1(L) <= p1(K) when the decoding region leaks."""
    code = make_code(code_name)
    pac = None
    if key_bits is not None:
        pac = ToeplitzHash.random(code.k_info, key_bits, np.random.default_rng(seed))
    
    if baseline:
        chain = baseline_chain(code.n_total, code, pac)
    else:
        chain = guessing_chain(build_breach_ensemble(code), pac)
    emit(chain, fmt, precision)
