# Independent extended-precision reference values (mpmath, 40 digits).
import mpmath as mp
mp.mp.dps = 40
A = mp.mpf('7.2973525693e-3')

def derived(Z, eps, kappa):
    za = Z*A; eps = mp.mpf(eps)
    g = mp.sqrt(kappa**2 - za**2); p = mp.sqrt(eps**2-1); nu = -za*eps/p
    w = (g - 1j*nu)/(kappa - 1j*nu/eps)
    xi = -mp.arg(w)/2
    return g, p, nu, xi, za/(eps+1)

def pair(Z, eps, kappa, rho):
    g, p, nu, xi, _ = derived(Z, eps, kappa)
    eps = mp.mpf(eps); rho = mp.mpf(rho)
    pre = 2**mp.mpf(1.5)*mp.exp(mp.pi*nu/2)*abs(mp.gamma(g+1+1j*nu))/mp.gamma(2*g+1)*(2*p*rho)**g/rho
    w = mp.exp(1j*(p*rho+xi))*mp.hyp1f1(g-1j*nu, 2*g+1, -2j*p*rho)
    return pre*mp.sqrt((eps+1)/eps)*mp.im(w), pre*mp.sqrt((eps-1)/eps)*mp.re(w)

def ueff(Z, eps, kappa, rho, shift):
    za = Z*A; eps = mp.mpf(eps); rho = mp.mpf(rho)
    V = za/rho; dV = -za/rho**2; d2V = 2*za/rho**3; den = eps+shift-V
    return eps*V - V**2/2 + kappa*(kappa+1)/(2*rho**2) + d2V/(4*den) + mp.mpf(3)/8*dV**2/den**2 - kappa*dV/(2*rho*den)

out = {}
for Z in (1, 10, 137):
    g, p, nu, xi, rc = derived(Z, 1.2, -1)
    out[f'derived_{Z}'] = tuple(float(x) for x in (g, p, nu, xi, rc))
for (Z, k, r) in [(1, -1, 1), (1, -1, 'rc'), (1, 1, 1), (10, -1, 2.5), (137, -1, 1), (137, 1, 5), (1, -1, 15)]:
    rr = derived(Z, 1.2, k)[4] if r == 'rc' else r
    out[f'pair_{Z}_{k}_{r}'] = tuple(float(x) for x in pair(Z, 1.2, k, rr))
g, p, nu, xi, rc = derived(1, 1.2, -1)
out['gamma_abs_zn'] = float(abs(mp.gamma(g+1+1j*nu)))
out['hyp_rho1'] = complex(mp.hyp1f1(g-1j*nu, 2*g+1, -2j*p))
# brute-force 200-term series as a cross-check of mpmath's hyp1f1
a, b, z = g-1j*nu, 2*g+1, -2j*p
s = t = mp.mpc(1)
for n in range(200):
    t *= (a+n)/(b+n)*z/(n+1); s += t
out['hyp_rho1_series'] = complex(s)
g, p, nu, xi, rc = derived(137, 1.2, -1)
out['hyp_137_rho20'] = complex(mp.hyp1f1(g-1j*nu, 2*g+1, -2j*p*20))
out['ueff_f_0.01'] = float(ueff(1, 1.2, -1, 0.01, 1))
out['ueff_g_0.01'] = float(ueff(1, 1.2, -1, 0.01, -1))
out['ueff_f_1'] = float(ueff(1, 1.2, -1, 1, 1))
za = A
out['dirac_rhs'] = (float((mp.mpf('2.2')-za)*mp.mpf('0.5')), float(-(mp.mpf('0.2')-za)*mp.mpf('0.3') - 2*mp.mpf('0.5')))
out['loggamma_half'] = float(mp.log(mp.sqrt(mp.pi)))
out['gamma_abs_1_05i'] = float(mp.sqrt(mp.pi*mp.mpf('0.5')/mp.sinh(mp.pi*mp.mpf('0.5'))))
for z in ('3.7+2.1j', '-2.5+0.3j', '0.2-7j', '-10.3-4.4j', '25+40j'):
    out[f'loggamma_{z}'] = complex(mp.loggamma(mp.mpmathify(complex(z))))
for k in (-1, 1):
    za = A; g = mp.sqrt(1-za**2)
    out[f'node_{k}'] = float(mp.atan((-k - g)/za))
out['phi0_asin'] = float(mp.asin(A)/2)
for k, v in out.items():
    print(f'{k!r}: {v!r},')
