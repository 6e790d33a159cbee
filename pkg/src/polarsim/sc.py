"""Successive cancellation decoding, bit-based and symbol-based.

The decoder state is a bank of metric-pair buffers organized by stage: stage
0 holds the per-sample channel pairs, stage s holds one pair per node of
block width 2^s. Working in the log domain turns the probability products
into sums; products marginalized over a bit use the exact Jacobian logarithm
max*(a, b) = max(a, b) + log(1 + exp(-|a - b|)). Halving constants are
dropped throughout: they are shared by every hypothesis at a given step and
cancel in all comparisons (the oracle module keeps them).

A symbol-based decode of width M = 2^m runs M component decoders of length
N/M over contiguous received chunks, then combines their per-stage output
pairs into 2^M-entry symbol tables with `channel_combine`. The decided
symbol's re-encoded bits feed back into the component decoders' partial
sums. For M = 1 this degenerates exactly to bit-based decoding.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .codec import encode_bits


def max_star(a, b):
    """Exact Jacobian logarithm: log(exp(a) + exp(b)), elementwise."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return np.maximum(a, b) + np.log1p(np.exp(-np.abs(a - b)))


def transform_check(upper, lower):
    """Pair transformation marginalizing the partner bit (log domain).

    out_b = max*(upper_b + lower_0, upper_{1-b} + lower_1). `upper` carries
    the xor branch of the first half-block, `lower` the direct branch of the
    second half-block. Shapes (..., 2) -> (..., 2).
    """
    upper = np.asarray(upper, dtype=np.float64)
    lower = np.asarray(lower, dtype=np.float64)
    out = np.empty(np.broadcast(upper, lower).shape)
    u0, u1 = upper[..., 0], upper[..., 1]
    l0, l1 = lower[..., 0], lower[..., 1]
    out[..., 0] = max_star(u0 + l0, u1 + l1)
    out[..., 1] = max_star(u1 + l0, u0 + l1)
    return out


def transform_combine(upper, lower, u_even):
    """Pair transformation once the partner (even) bit is decided.

    out_b = upper_{u_even xor b} + lower_b. `u_even` broadcasts against the
    leading axes of the pair arrays.
    """
    upper = np.asarray(upper, dtype=np.float64)
    lower = np.asarray(lower, dtype=np.float64)
    e = np.asarray(u_even)
    out = np.empty(np.broadcast(upper, lower).shape)
    u0, u1 = upper[..., 0], upper[..., 1]
    out[..., 0] = np.where(e == 0, u0, u1) + lower[..., 0]
    out[..., 1] = np.where(e == 0, u1, u0) + lower[..., 1]
    return out


@lru_cache(maxsize=None)
def _combine_index_maps(width):
    """Index maps for combining two width-bit tables into a 2*width-bit table.

    For each output symbol (bits MSB first), returns the integer formed by
    the xor of adjacent bit pairs and the integer formed by the odd bits.
    """
    h = np.arange(1 << (2 * width))
    eo = np.zeros_like(h)
    odd = np.zeros_like(h)
    for i in range(width):
        b_even = (h >> (2 * width - 1 - 2 * i)) & 1
        b_odd = (h >> (2 * width - 2 - 2 * i)) & 1
        eo |= (b_even ^ b_odd) << (width - 1 - i)
        odd |= b_odd << (width - 1 - i)
    return eo, odd


def channel_combine(left, right):
    """Combine two half-width symbol tables into a double-width table.

    `left` holds log metrics for the xor-branch sub-symbol, `right` for the
    direct-branch sub-symbol; entry u of the output is
    left[u_even xor u_odd] + right[u_odd] (one addition per entry). Tables
    are indexed by symbol value with bits read MSB first; leading axes are
    broadcast elementwise.
    """
    left = np.asarray(left, dtype=np.float64)
    right = np.asarray(right, dtype=np.float64)
    size = left.shape[-1]
    if right.shape[-1] != size:
        raise ValueError("left and right tables must have equal width")
    if size & (size - 1):
        raise ValueError("table size must be a power of two")
    width = size.bit_length() - 1
    eo, odd = _combine_index_maps(width)
    return left[..., eo] + right[..., odd]


def int_to_bits(values, width):
    """Integers to width-bit arrays, MSB first."""
    values = np.asarray(values)
    shifts = np.arange(width - 1, -1, -1)
    return ((values[..., None] >> shifts) & 1).astype(np.int8)


@lru_cache(maxsize=None)
def symbol_component_bits(M):
    """(2^M, M) table: row s holds the re-encoded bits of symbol value s.

    Entry (s, c) is the bit fed back to component decoder c after symbol s
    is decided; it equals coded bit c of the width-M polar encoding of s.
    """
    m = M.bit_length() - 1
    if M != 1 << m:
        raise ValueError(f"M must be a power of two, got {M}")
    sym_bits = int_to_bits(np.arange(1 << M), M)
    return encode_bits(sym_bits, m)


class _PairBank:
    """Vectorized bank of SC metric recursions over arbitrary leading axes.

    One bank instance drives every decoder unit in lockstep: leading axes
    typically run over (batch,), (batch, list) or (batch, list, component).
    `up[s]` holds the latest pair emitted by each of the 2^(w-s) nodes of
    stage s; `ev[s]` holds each node's stored even-step bit decision (the
    partial sums fed back between stages).
    """

    def __init__(self, lead, width):
        w = width.bit_length() - 1
        if width != 1 << w:
            raise ValueError(f"width must be a power of two, got {width}")
        self.lead = tuple(lead)
        self.width = width
        self.w = w
        self.up = [np.zeros(self.lead + (width >> s, 2)) for s in range(w + 1)]
        self.ev = [np.zeros(self.lead + (width >> s,), dtype=np.int8)
                   for s in range(w + 1)]

    def load(self, channel_pairs):
        """Set the stage-0 pairs; shape lead + (width, 2), broadcastable."""
        self.up[0][...] = channel_pairs

    def _eq_check(self, s):
        u = self.up[s - 1][..., 0::2, :]
        lo = self.up[s - 1][..., 1::2, :]
        out = self.up[s]
        a = u[..., 0] + lo[..., 0]
        b = u[..., 1] + lo[..., 1]
        out[..., 0] = np.maximum(a, b) + np.log1p(np.exp(-np.abs(a - b)))
        a = u[..., 1] + lo[..., 0]
        b = u[..., 0] + lo[..., 1]
        out[..., 1] = np.maximum(a, b) + np.log1p(np.exp(-np.abs(a - b)))

    def _eq_combine(self, s):
        u = self.up[s - 1][..., 0::2, :]
        lo = self.up[s - 1][..., 1::2, :]
        e = self.ev[s] == 0
        out = self.up[s]
        out[..., 0] = np.where(e, u[..., 0], u[..., 1]) + lo[..., 0]
        out[..., 1] = np.where(e, u[..., 1], u[..., 0]) + lo[..., 1]

    def refresh(self, j):
        """Advance metric computation for bit index j; return the top pair.

        Stage s recomputes when j is a multiple of 2^(w-s): with the partner
        bit still undecided it marginalizes (check form), afterwards it uses
        the stored partial sum (combine form).
        """
        if j == 0:
            for s in range(1, self.w + 1):
                self._eq_check(s)
        else:
            tz = (j & -j).bit_length() - 1
            d = self.w - tz
            if d >= 1:
                self._eq_combine(d)
            for s in range(d + 1, self.w + 1):
                self._eq_check(s)
        return self.up[self.w][..., 0, :]

    def feed(self, j, bits):
        """Record decided bit j (shape = lead) and cascade partial sums."""
        cur = np.asarray(bits, dtype=np.int8).reshape(self.lead + (1,))
        s = self.w
        t = j
        while (t & 1) and s > 0:
            upper = self.ev[s] ^ cur
            nxt = np.empty(self.lead + (2 * upper.shape[-1],), dtype=np.int8)
            nxt[..., 0::2] = upper
            nxt[..., 1::2] = cur
            cur = nxt
            s -= 1
            t >>= 1
        self.ev[s][...] = cur

    def take_static(self, idx, axis=1):
        """Reorder a leading axis with one shared index vector (growth phase)."""
        for s in range(self.w + 1):
            self.up[s] = np.take(self.up[s], idx, axis=axis)
            self.ev[s] = np.take(self.ev[s], idx, axis=axis)

    def gather_paths(self, idx):
        """Per-frame reorder of axis 1 (list axis): idx has shape (B, L)."""
        b = np.arange(idx.shape[0])[:, None]
        for s in range(self.w + 1):
            self.up[s] = self.up[s][b, idx]
            self.ev[s] = self.ev[s][b, idx]


def sc_decode_batch(code, metrics):
    """Bit-based SC decode of a batch; metrics (B, N, 2) -> decisions (B, N).

    Frozen bits decode to zero; information bit j decodes to the hypothesis
    maximizing the running metric pair, with ties resolved to 1 (a tied
    likelihood ratio counts as >= 1).
    """
    metrics = np.asarray(metrics, dtype=np.float64)
    B = metrics.shape[0]
    bank = _PairBank((B,), code.N)
    bank.load(metrics)
    frozen = code.frozen_mask()
    u = np.zeros((B, code.N), dtype=np.int8)
    for j in range(code.N):
        top = bank.refresh(j)
        if frozen[j]:
            bits = np.zeros(B, dtype=np.int8)
        else:
            bits = (top[:, 1] >= top[:, 0]).astype(np.int8)
        u[:, j] = bits
        bank.feed(j, bits)
    return u


def sc_decode(code, metrics):
    """SC-decode one frame; metrics is an (N, 2) array of log metric pairs."""
    metrics = np.asarray(metrics)
    if metrics.shape != (code.N, 2):
        raise ValueError(f"metrics must have shape ({code.N}, 2)")
    return sc_decode_batch(code, metrics[None])[0]


def _symbol_tables(pairs):
    """Reduce component output pairs (..., M, 2) to a (..., 2^M) symbol table."""
    tabs = pairs
    while tabs.shape[-2] > 1:
        tabs = channel_combine(tabs[..., 0::2, :], tabs[..., 1::2, :])
    return tabs[..., 0, :]


def symbol_sc_decode_batch(code, part, metrics, record_tables=False):
    """Symbol-based SC decode of a batch; metrics (B, N, 2) -> (B, N).

    Decides M bits per step by maximizing the combined symbol table over the
    hypotheses consistent with the symbol's frozen positions. Fully frozen
    symbols extend with zeros without evaluating the table (unless tables
    are being recorded). Ties pick the largest consistent hypothesis, which
    makes M = 1 coincide exactly with `sc_decode`.

    With record_tables=True also returns a list of per-symbol (B, 2^M) log
    tables (constants dropped).
    """
    metrics = np.asarray(metrics, dtype=np.float64)
    B = metrics.shape[0]
    M = part.M
    if M > (1 << 20):
        raise ValueError("symbol table would exceed 2^20 entries")
    n_comp = code.N // M
    bank = _PairBank((B, M), n_comp)
    bank.load(metrics.reshape(B, M, n_comp, 2))
    comp_bits = symbol_component_bits(M)
    u = np.zeros((B, code.N), dtype=np.int8)
    tables = [] if record_tables else None
    for j in range(part.symbol_count):
        pairs = bank.refresh(j)
        hyps = part.hypotheses(j)
        if hyps.size == 1 and not record_tables:
            sym = np.zeros(B, dtype=np.int64)
        else:
            table = _symbol_tables(pairs)
            if record_tables:
                tables.append(table.copy())
            cons = table[:, hyps]
            k = (hyps.size - 1) - np.argmax(cons[:, ::-1], axis=1)
            sym = hyps[k]
        bank.feed(j, comp_bits[sym])
        u[:, j * M : (j + 1) * M] = int_to_bits(sym, M)
    if record_tables:
        return u, tables
    return u


def symbol_sc_decode(code, part, metrics):
    """Symbol-based SC decode of one frame."""
    metrics = np.asarray(metrics)
    if metrics.shape != (code.N, 2):
        raise ValueError(f"metrics must have shape ({code.N}, 2)")
    return symbol_sc_decode_batch(code, part, metrics[None])[0]
