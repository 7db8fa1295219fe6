//! Fixed inputs for the kernel benchmarks.

use hyperfield_core::extension::realize;
use hyperfield_core::poly::{HPoly, SeriesPoly};
use hyperfield_core::rat::ratio;
use hyperfield_core::solve::LinearSystem;
use hyperfield_core::{FieldKind, GroupElem, HElem, Hyperfield, SeriesTrunc};

/// `(c, g)` with a rational level `num/den`.
pub fn pair(c: HElem, num: i64, den: i64) -> HElem {
    HElem::pair(c, GroupElem::from_rational(ratio(num, den)))
}

/// A degree-6 tropical polynomial whose Newton polygon has four edges.
pub fn tropical_sextic() -> HPoly {
    let levels = [(0, 1), (-1, 1), (-3, 2), (-1, 1), (-5, 2), (1, 1), (-2, 1)];
    let coeffs: Vec<HElem> = levels
        .iter()
        .map(|&(n, d)| pair(HElem::One, n, d))
        .collect();
    HPoly::univariate(realize("T").unwrap(), &coeffs).unwrap()
}

/// `∏ (X − (c_i, g_i))` pushed into `ℚ⋊ℚ` by the fine valuation, degree 5.
pub fn fine_quintic() -> HPoly {
    let q = FieldKind::Rationals;
    let roots: Vec<SeriesTrunc> = [(1, 0), (-2, 1), (3, 1), (1, 2), (-1, 3)]
        .iter()
        .map(|&(c, e)| SeriesTrunc::from_ints(&[(c, e)], None))
        .collect();
    let p = SeriesPoly::from_roots(q.clone(), &roots).unwrap();
    p.pushforward(&hyperfield_core::HomDescriptor::fval(q))
        .unwrap()
}

/// `sgn_*` of `(X − 1)(X − 2)(X + 1)` over the sign hyperfield.
pub fn sign_cubic() -> HPoly {
    let s = [1, -1, -1, 1].map(HElem::Sign);
    HPoly::univariate(Hyperfield::Sign, &s).unwrap()
}

pub fn worked_system() -> [SeriesPoly; 2] {
    LinearSystem::worked_example().polys().unwrap()
}

/// A generic-looking series of the given length with mixed denominators.
pub fn dense_series(len: i64) -> SeriesTrunc {
    let terms = (0..len).map(|i| (ratio(i, 1 + i % 4), HElem::int(1 + i % 5)));
    SeriesTrunc::new(FieldKind::Rationals, terms, Some(ratio(len, 1)))
}
