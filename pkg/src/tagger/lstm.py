"""LSTM cell, bidirectional encoder and their exact backward passes.

Gate parameters are stacked in the order input (i), forget (f), output (o),
candidate (g): rows [k*h, (k+1)*h) of each matrix belong to gate k.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

GATES = ("i", "f", "o", "g")


def sigmoid(x: np.ndarray) -> np.ndarray:
    # tanh form stays finite for large |x|
    return 0.5 * (1.0 + np.tanh(0.5 * x))


@dataclass
class LstmParams:
    """Input weights (4h x d), recurrent weights (4h x h) and bias (4h)."""
    w_input: np.ndarray
    w_hidden: np.ndarray
    bias: np.ndarray

    def __post_init__(self):
        self.w_input = np.asarray(self.w_input, dtype=np.float64)
        self.w_hidden = np.asarray(self.w_hidden, dtype=np.float64)
        self.bias = np.asarray(self.bias, dtype=np.float64)
        h = self.w_hidden.shape[1] if self.w_hidden.ndim == 2 else -1
        if (
            self.w_hidden.shape != (4 * h, h)
            or self.w_input.ndim != 2
            or self.w_input.shape[0] != 4 * h
            or self.bias.shape != (4 * h,)
        ):
            raise ValueError(
                f"inconsistent LSTM shapes: input {self.w_input.shape}, "
                f"recurrent {self.w_hidden.shape}, bias {self.bias.shape}"
            )

    @property
    def hidden_size(self) -> int:
        return self.w_hidden.shape[1]

    @property
    def input_size(self) -> int:
        return self.w_input.shape[1]

    @classmethod
    def zeros(cls, input_size: int, hidden_size: int) -> "LstmParams":
        return cls(
            np.zeros((4 * hidden_size, input_size)),
            np.zeros((4 * hidden_size, hidden_size)),
            np.zeros(4 * hidden_size),
        )

    def gate(self, name: str) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(W, U, b) views for one gate."""
        h = self.hidden_size
        k = GATES.index(name)
        rows = slice(k * h, (k + 1) * h)
        return self.w_input[rows], self.w_hidden[rows], self.bias[rows]

    def copy(self) -> "LstmParams":
        return LstmParams(self.w_input.copy(), self.w_hidden.copy(), self.bias.copy())

    def arrays(self) -> Dict[str, np.ndarray]:
        return {"w_input": self.w_input, "w_hidden": self.w_hidden, "bias": self.bias}


def _cell(x, h_prev, c_prev, params: LstmParams):
    h = params.hidden_size
    z = params.w_input @ x + params.w_hidden @ h_prev + params.bias
    i = sigmoid(z[:h])
    f = sigmoid(z[h:2 * h])
    o = sigmoid(z[2 * h:3 * h])
    g = np.tanh(z[3 * h:])
    c = f * c_prev + i * g
    tanh_c = np.tanh(c)
    return i, f, o, g, c, tanh_c, o * tanh_c


def lstm_step(
    x: np.ndarray, h_prev: np.ndarray, c_prev: np.ndarray, params: LstmParams
) -> Tuple[np.ndarray, np.ndarray]:
    """
    One LSTM transition.

    Args:
        x: Input vector (d)
        h_prev: Previous hidden state (h)
        c_prev: Previous cell state (h)
        params: Cell parameters

    Returns:
        (h, c) new hidden and cell states
    """
    x = np.asarray(x, dtype=np.float64)
    h_prev = np.asarray(h_prev, dtype=np.float64)
    c_prev = np.asarray(c_prev, dtype=np.float64)
    if x.shape != (params.input_size,):
        raise ValueError(f"input has shape {x.shape}, expected ({params.input_size},)")
    if h_prev.shape != (params.hidden_size,) or c_prev.shape != (params.hidden_size,):
        raise ValueError(
            f"states have shapes {h_prev.shape}/{c_prev.shape}, expected ({params.hidden_size},)"
        )
    *_, c, _, h = _cell(x, h_prev, c_prev, params)
    return h, c


@dataclass
class LstmTrace:
    """Per-step activations of one directional pass, kept for backprop."""
    xs: np.ndarray
    h_prev: np.ndarray
    c_prev: np.ndarray
    i: np.ndarray
    f: np.ndarray
    o: np.ndarray
    g: np.ndarray
    tanh_c: np.ndarray
    hs: np.ndarray


def lstm_forward(xs: np.ndarray, params: LstmParams) -> LstmTrace:
    """Run the cell over rows of xs from zero initial states."""
    length, h = xs.shape[0], params.hidden_size
    buffers = {name: np.zeros((length, h)) for name in ("h_prev", "c_prev", "i", "f", "o", "g", "tanh_c", "hs")}
    h_t = np.zeros(h)
    c_t = np.zeros(h)
    for t in range(length):
        buffers["h_prev"][t] = h_t
        buffers["c_prev"][t] = c_t
        i, f, o, g, c_t, tanh_c, h_t = _cell(xs[t], h_t, c_t, params)
        buffers["i"][t], buffers["f"][t], buffers["o"][t], buffers["g"][t] = i, f, o, g
        buffers["tanh_c"][t] = tanh_c
        buffers["hs"][t] = h_t
    return LstmTrace(xs=xs, **buffers)


def lstm_backward(trace: LstmTrace, d_hs: np.ndarray, params: LstmParams) -> Tuple[np.ndarray, LstmParams]:
    """
    Backpropagate d(loss)/d(hs) through time.

    Returns:
        (d_xs, parameter gradients)
    """
    length, h = d_hs.shape
    grads = LstmParams.zeros(params.input_size, h)
    d_xs = np.zeros_like(trace.xs)
    dh_next = np.zeros(h)
    dc_next = np.zeros(h)
    for t in reversed(range(length)):
        i, f, o, g, tanh_c = trace.i[t], trace.f[t], trace.o[t], trace.g[t], trace.tanh_c[t]
        dh = d_hs[t] + dh_next
        do = dh * tanh_c
        dc = dh * o * (1.0 - tanh_c ** 2) + dc_next
        dz = np.concatenate((
            dc * g * i * (1.0 - i),
            dc * trace.c_prev[t] * f * (1.0 - f),
            do * o * (1.0 - o),
            dc * i * (1.0 - g ** 2),
        ))
        grads.w_input += np.outer(dz, trace.xs[t])
        grads.w_hidden += np.outer(dz, trace.h_prev[t])
        grads.bias += dz
        d_xs[t] = params.w_input.T @ dz
        dh_next = params.w_hidden.T @ dz
        dc_next = dc * f
    return d_xs, grads


@dataclass
class BiLstmTrace:
    forward: LstmTrace
    backward: LstmTrace


def bilstm_forward(xs: np.ndarray, fwd: LstmParams, bwd: LstmParams) -> Tuple[np.ndarray, BiLstmTrace]:
    """Encoded L x 2h matrix plus the trace needed by bilstm_backward."""
    forward = lstm_forward(xs, fwd)
    backward = lstm_forward(xs[::-1], bwd)
    encoded = np.concatenate((forward.hs, backward.hs[::-1]), axis=1)
    return encoded, BiLstmTrace(forward, backward)


def bilstm_encode(xs: np.ndarray, fwd: LstmParams, bwd: LstmParams) -> np.ndarray:
    """
    Row t is [forward state at t ; backward state at t], both passes starting
    from zero states, the backward one over the reversed sequence.
    """
    xs = np.asarray(xs, dtype=np.float64)
    if xs.ndim != 2 or xs.shape[0] < 1:
        raise ValueError(f"expected a nonempty L x d matrix, got shape {xs.shape}")
    encoded, _ = bilstm_forward(xs, fwd, bwd)
    return encoded


def bilstm_backward(
    trace: BiLstmTrace, d_encoded: np.ndarray, fwd: LstmParams, bwd: LstmParams
) -> Tuple[np.ndarray, LstmParams, LstmParams]:
    """(d_xs, forward gradients, backward gradients)."""
    h = fwd.hidden_size
    d_xs_fwd, g_fwd = lstm_backward(trace.forward, d_encoded[:, :h], fwd)
    d_xs_rev, g_bwd = lstm_backward(trace.backward, d_encoded[::-1, h:], bwd)
    return d_xs_fwd + d_xs_rev[::-1], g_fwd, g_bwd
