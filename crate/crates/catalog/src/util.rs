use std::collections::{BTreeSet, HashMap};

use hsx_core::structures::TwoFormFamily;
use hsx_core::Scalar;
use hsx_exact::linalg::det;
use hsx_exact::{factor_poly, MPoly, Matrix, Monomial, Rational, Var};

use crate::entries::Param;

/// Whether `found` is a nonzero multiple of `printed` or of its square, the
/// multiplier being free of the family coefficients and nonzero on the
/// parameter domain (checked at the samples).
pub fn agrees_up_to_unit(found: &Scalar, printed: &Scalar, coeffs: &BTreeSet<Var>, param: Option<&Param>) -> (bool, String) {
    if found.is_zero() || printed.is_zero() {
        return (found.is_zero() && printed.is_zero(), format!("found {found}, printed {printed}"));
    }
    for k in 1..=2 {
        let Some(ratio) = found.checked_div(&printed.pow(k)) else { continue };
        if ratio.vars().iter().any(|v| coeffs.contains(v)) {
            continue;
        }
        let unit = match param {
            None => ratio.is_constant(),
            Some(p) => p.samples.iter().all(|s| {
                let b = HashMap::from([(Var::new(p.name), s.parse::<Rational>().expect("sample"))]);
                matches!(ratio.eval_rational(&b), Ok(x) if !x.is_zero())
            }),
        };
        if unit {
            let shown = if k == 1 { String::new() } else { "^2".into() };
            return (true, format!("Pf = ({ratio})*({printed}){shown}"));
        }
    }
    (false, format!("Pf = {found}, printed {printed}"))
}

/// Roots of univariate factors in `v` that lie in the parameter domain.
pub fn roots_in_domain(eq: &Scalar, param: &Param) -> Vec<Rational> {
    let v = Var::new(param.name);
    let (_, factors) = factor_poly(eq.numer());
    let mut out = Vec::new();
    for (f, _) in factors {
        if f.vars().len() != 1 || !f.vars().contains(&v) {
            continue;
        }
        if let Some(c) = f.as_univariate(v) {
            if c.len() == 2 {
                let r = -(&c[0] / &c[1]);
                if param.domain.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Side equations whose parameter factor has no root on the domain are
/// equivalent to the vanishing of their coefficient part; the members they
/// constrain are dropped.
pub fn settle_on_domain(fam: &TwoFormFamily, param: Option<&Param>) -> TwoFormFamily {
    let Some(p) = param else { return fam.drop_side_conditions(|_| false) };
    let v = Var::new(p.name);
    fam.drop_side_conditions(|eq| {
        let (_, factors) = factor_poly(eq.numer());
        factors.iter().any(|(f, _)| f.vars().contains(&v) && f.vars().len() == 1) && !roots_in_domain(eq, p).is_empty()
    })
}

pub fn coefficient_vars(fam: &TwoFormFamily) -> BTreeSet<Var> {
    fam.param_vars().into_iter().collect()
}

/// Zero set argument for a factor: `Some(points)` when the real zeros with
/// the `nonzero` variables nonvanishing are exactly `points`.
fn factor_zeros(f: &MPoly, x: Var, y: Var, nonzero: &[Var]) -> Option<Vec<(Rational, Rational)>> {
    if f.is_constant() {
        return Some(Vec::new());
    }
    if f.num_terms() == 1 {
        let (m, _) = f.terms().next().expect("one term");
        if m.pairs().iter().all(|(v, _)| nonzero.contains(v)) {
            return Some(Vec::new());
        }
    }
    quadratic_zeros(f, x, y)
}

/// Real zeros of a definite quadratic in two variables.
pub fn quadratic_zeros(f: &MPoly, x: Var, y: Var) -> Option<Vec<(Rational, Rational)>> {
    if f.total_degree() != 2 || f.vars().iter().any(|v| *v != x && *v != y) {
        return None;
    }
    let c = |px: u32, py: u32| f.coeff(&Monomial::from_pairs([(x, px), (y, py)].into_iter().filter(|(_, e)| *e > 0)));
    let (fxx, fxy, fyy, fx, fy) = (c(2, 0), c(1, 1), c(0, 2), c(1, 0), c(0, 1));
    let two = Rational::from_int(2);
    let disc = &(&Rational::from_int(4) * &(&fxx * &fyy)) - &(&fxy * &fxy);
    if !disc.is_positive() {
        return None;
    }
    // H (x, y) = −(fx, fy) with H = [[2fxx, fxy], [fxy, 2fyy]]
    let xs = &(&(&fy * &fxy) - &(&two * &(&fx * &fyy))) / &disc;
    let ys = &(&(&fx * &fxy) - &(&two * &(&fy * &fxx))) / &disc;
    let b = HashMap::from([(x, xs.clone()), (y, ys.clone())]);
    let min = f.eval_full(&b)?;
    let sign = fxx.signum();
    if min.is_zero() {
        Some(vec![(xs, ys)])
    } else if min.signum() == sign {
        Some(Vec::new())
    } else {
        None
    }
}

fn eval_at(s: &Scalar, x: Var, y: Var, p: &(Rational, Rational)) -> Option<Rational> {
    s.eval_rational(&HashMap::from([(x, p.0.clone()), (y, p.1.clone())])).ok()
}

fn is_unit(s: &Scalar, nonzero: &[Var]) -> bool {
    let n = s.numer();
    n.num_terms() == 1 && n.terms().all(|(m, _)| m.pairs().iter().all(|(v, _)| nonzero.contains(v)))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankDrop {
    /// Columns forced to vanish for every value of (x, y).
    pub forced: Vec<usize>,
    /// The decisive minor used to bound the locus.
    pub minor: Scalar,
    /// Real points (x, y) where the remaining columns lose rank.
    pub points: Vec<(Rational, Rational)>,
}

/// Real points where the constraint matrix `c` over ℚ(x, y) has a nonzero
/// kernel, assuming the `nonzero` variables do not vanish. Errors when no
/// minor has a decidable zero set.
pub fn rank_drop_locus(c: &Matrix<Scalar>, x: Var, y: Var, nonzero: &[Var]) -> Result<RankDrop, String> {
    let mut cols: Vec<usize> = (0..c.cols()).collect();
    let mut forced = Vec::new();
    loop {
        let hit = (0..c.rows()).find_map(|r| {
            let nz: Vec<usize> = cols.iter().copied().filter(|&k| !c[(r, k)].is_zero()).collect();
            (nz.len() == 1 && is_unit(&c[(r, nz[0])], nonzero)).then(|| nz[0])
        });
        match hit {
            Some(k) => {
                forced.push(k);
                cols.retain(|&j| j != k);
            }
            None => break,
        }
    }
    let m = cols.len();
    if m == 0 {
        return Ok(RankDrop {
            forced,
            minor: Scalar::one(),
            points: Vec::new(),
        });
    }
    let minors: Vec<Scalar> = subsets(c.rows(), m)
        .into_iter()
        .map(|rows| {
            let sub = Matrix::from_fn(m, m, |i, j| c[(rows[i], cols[j])].clone());
            det(&sub).expect("square")
        })
        .filter(|d| !d.is_zero())
        .collect();
    if minors.is_empty() {
        return Err("every maximal minor vanishes identically".into());
    }
    for minor in &minors {
        let (_, factors) = factor_poly(minor.numer());
        let mut cand = Vec::new();
        let mut decided = true;
        for (f, _) in &factors {
            match factor_zeros(f, x, y, nonzero) {
                Some(z) => cand.extend(z),
                None => {
                    decided = false;
                    break;
                }
            }
        }
        if !decided {
            continue;
        }
        let points = cand
            .into_iter()
            .filter(|p| nonzero.iter().all(|v| (if *v == x { &p.0 } else { &p.1 }) != &Rational::zero()))
            .filter(|p| minors.iter().all(|d| eval_at(d, x, y, p).map_or(true, |v| v.is_zero())))
            .collect();
        return Ok(RankDrop {
            forced,
            minor: minor.clone(),
            points,
        });
    }
    Err("no maximal minor with a decidable real zero set".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> MPoly {
        s.parse::<Scalar>().unwrap().numer().clone()
    }

    #[test]
    fn definite_quadratics() {
        let (p, q) = (Var::new("p"), Var::new("q"));
        let r = |a, b| Rational::frac(a, b);
        assert_eq!(quadratic_zeros(&poly("(q-1)^2+p^2"), p, q), Some(vec![(r(0, 1), r(1, 1))]));
        assert_eq!(quadratic_zeros(&poly("p^2+q^2+1"), p, q), Some(vec![]));
        assert_eq!(quadratic_zeros(&poly("-(p^2+q^2+1)"), p, q), Some(vec![]));
        assert_eq!(quadratic_zeros(&poly("p^2+q^2-1"), p, q), None);
        assert_eq!(quadratic_zeros(&poly("p^2-q^2"), p, q), None);
        assert_eq!(quadratic_zeros(&poly("(2*p-1)^2+(3*q+2)^2"), p, q), Some(vec![(r(1, 2), r(-2, 3))]));
    }

    #[test]
    fn rank_drop_of_a_diagonal_system() {
        let (p, q) = (Var::new("p"), Var::new("q"));
        let s = |t: &str| t.parse::<Scalar>().unwrap();
        let c = Matrix::from_rows(vec![
            vec![s("1/q"), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), s("q-1"), s("p")],
            vec![Scalar::zero(), s("-p"), s("q-1")],
        ])
        .unwrap();
        let d = rank_drop_locus(&c, p, q, &[q]).unwrap();
        assert_eq!(d.forced, vec![0]);
        assert_eq!(d.points, vec![(Rational::zero(), Rational::one())]);
    }
}
