"""Reference values computed with mpmath at 40 significant digits.

Generated by ``tools/make_oracles.py`` and frozen here, so the suite does not
depend on the generator.
"""

ORACLE = {
    'derived_1': (0.9999733739682669, 0.6633249580710799, -0.013201407510165847, 1.5586954661513779, 0.003316978440590909),
    'derived_10': (0.9973338781711635, 0.6633249580710799, -0.13201407510165847, 1.450209798832794, 0.03316978440590909),
    'derived_137': (0.022920013122982634, 0.6633249580710799, -1.808592828892721, 0.2992393700419678, 0.45442604636095457),
    'pair_1_-1_1': (2.3296970574368383, -0.15090826795514145),
    'pair_1_-1_rc': (2.4884052608440834, 0.008529157382396199),
    'pair_1_1_1': (0.5261036676647157, 0.7007275225214166),
    'pair_10_-1_2.5': (1.564321631200051, -0.23393075711702369),
    'pair_137_-1_1': (0.1338743061977064, 0.05344313099026258),
    'pair_137_1_5': (0.37696737032001526, 0.13190950486172032),
    'pair_1_-1_15': (-0.11776187968744782, -0.06470364694176081),
    'gamma_abs_zn': 0.9999325464832058,
    'hyp_rho1': (0.8666284844562797-0.40757194857252005j),
    'hyp_rho1_series': (0.8666284844562797-0.40757194857252005j),
    'hyp_137_rho20': (70.70361616350206+42.04758314846902j),
    'ueff_f_0.01': 924.3942868415796,
    'ueff_g_0.01': 7116.744277773655,
    'ueff_f_1': 0.00873435079333658,
    'dirac_rhs': (1.09635132371535, -1.05781079422921),
    'loggamma_half': 0.5723649429247001,
    'gamma_abs_1_05i': 0.8261776142760452,
    'loggamma_3.7+2.1j': (0.7853469580738224+2.5830129251152623j),
    'loggamma_-2.5+0.3j': (-0.43208889261320194-9.093345421289742j),
    'loggamma_0.2-7j': (-10.660245035487833-6.149654062087331j),
    'loggamma_-10.3-4.4j': (-26.92684415637093+23.341755521491315j),
    'loggamma_25+40j': (29.84901881491575+138.94757254800084j),
    'node_-1': 0.0036487086682517452,
    'node_1': -1.5671476181266448,
    'phi0_asin': 0.0036487086682517452,
}
