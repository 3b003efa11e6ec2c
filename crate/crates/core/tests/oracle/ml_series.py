"""High-precision direct-series oracle for the Mittag-Leffler family.

Sums E_b(z) = sum z^n / Gamma(b n + 1) (and its term-wise derivatives) with
enough working digits to absorb the alternating-series cancellation. For
rational b = p/q the gamma values are advanced with the exact recurrence
Gamma(x + p) = (x)(x+1)...(x+p-1) Gamma(x) inside each residue class n mod q,
so only q gamma evaluations are needed per call.

Run once; the printed values are frozen into the Rust test suites.
"""
from fractions import Fraction
import mpmath as mp


def ml_deriv(beta, x, k=0, extra_digits=40):
    """k-th derivative of E_beta at real x (x <= 0 or small positive)."""
    b = Fraction(beta).limit_denominator(1000)
    p, q = b.numerator, b.denominator
    ax = abs(x)
    # magnitude of the largest term ~ exp(ax^(1/b)); size the precision to it
    digits = int(float(ax) ** (1.0 / float(b)) / 2.302585) + extra_digits + 10 * k
    mp.mp.dps = max(digits, 50)
    bm = mp.mpf(p) / q
    xm = mp.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mp.mpf(x)
    total = mp.mpf(0)
    # residue classes: n = r + q*j, Gamma(b n + 1) = Gamma(r p/q + 1 + p j)
    inv_eps = mp.mpf(10) ** (-(extra_digits))
    for r in range(q):
        n = r
        g = mp.gamma(bm * n + 1)
        while True:
            if n >= k:
                # n!/(n-k)! x^(n-k) / Gamma(b n + 1)
                coef = mp.ff(n, k) if k else 1
                term = coef * xm ** (n - k) / g
                total += term
                past_peak = float(bm * n) > float(ax) ** (1 / float(b)) + k + 5
                if past_peak and abs(term) < inv_eps:
                    break
            # advance n -> n + q: Gamma argument grows by p
            base = bm * n + 1
            for i in range(p):
                g *= base + i
            n += q
    return total


def pmf(n, t, beta, lam):
    x = lam * mp.mpf(t) ** beta
    return x ** n / mp.factorial(n) * ml_deriv(beta, -x, n)


if __name__ == "__main__":
    for beta in ["0.3", "0.5", "0.7", "0.9"]:
        for x in ["0.5", "1", "2", "5", "20"]:
            v = ml_deriv(Fraction(beta), -Fraction(x))
            mp.mp.dps = 30
            print(f"E_{beta}(-{x}) = {mp.nstr(v, 20)}")
    mp.mp.dps = 30
    print("erfc check E_0.5(-1):", mp.nstr(mp.exp(1) * mp.erfc(1), 20))
    print("E_0.5'(-1) =", mp.nstr(ml_deriv(Fraction(1, 2), -1, 1), 20))
    print("E_0.5''(-1) =", mp.nstr(ml_deriv(Fraction(1, 2), -1, 2), 20))
    print("p_2(1; 0.5, 1) =", mp.nstr(pmf(2, 1, Fraction(1, 2), 1), 20))
    for n in range(6):
        print(f"p_{n}(1; 0.6, 1) =", mp.nstr(pmf(n, 1, Fraction(3, 5), 1), 20))
    print("E_0.6(-1) =", mp.nstr(ml_deriv(Fraction(3, 5), -1), 20))
    print("E_0.6(-2^0.6) =", mp.nstr(ml_deriv(Fraction(3, 5), -mp.mpf(2) ** mp.mpf(0.6)), 20))
