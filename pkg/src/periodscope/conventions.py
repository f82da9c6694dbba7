"""Fixed conventions for the Dwork pencil computation.

Everything sign- or normalization-sensitive in the Griffiths-Dwork code is
decided here, once.

Pencil
    F(x; t) = sum_i x_i^5 + PARAM_COEFF * t * x_1 x_2 x_3 x_4 x_5,  PARAM_COEFF = -5.
    The fibre X_t is singular exactly when t^5 = 1.

Residue forms
    A form of pole order k is  A(x) * Omega / F^k  with deg A = 5(k - 1);
    Omega is the standard projective volume form and only the numerator and
    k are stored.  omega = Omega / F (k = 1, numerator 1).

Gauss-Manin step  (d/dt acting on the class of A Omega / F^k)
    d/dt (A / F^k) = (k * (-dF/dt) * A + F * dA/dt) / F^(k+1)
    with -dF/dt = GM_FACTOR * prod(x),  GM_FACTOR = -PARAM_COEFF = 5.
    Hence  nabla^k omega = k! * 5^k * prod(x)^k * Omega / F^(k+1).

Griffiths reduction  (modulo exact forms)
    (sum_i A_i dF/dx_i) * Omega / F^k  ==  (1/(k-1)) * (sum_i dA_i/dx_i) * Omega / F^(k-1).

Canonical basis of the invariant quotient (rank 4)
    e_j = prod(x)^j * Omega / F^(j+1),  j = 0, 1, 2, 3.

Picard-Fuchs normalization
    sum_i p_i(t) nabla^i omega = 0 with p_4 = 1 (monic), coefficients in Q(t).
"""

from fractions import Fraction

N_VARS = 5
DEGREE = 5
DEFORMING_MONOMIAL = (1, 1, 1, 1, 1)
PARAM_COEFF = Fraction(-5)
GM_FACTOR = -PARAM_COEFF
CANONICAL_BASIS_RANK = 4

# reconstruction schedule for the specialize-and-interpolate derivation
INITIAL_DEGREE_BOUND = 10
MAX_DEGREE_BOUND = 64
HELD_OUT_SAMPLES = 2
