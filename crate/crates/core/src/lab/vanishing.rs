use serde::Serialize;

use crate::arrangement::{enumerate_flats, FermatConfig, Flat};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::par;
use crate::poly::Polynomial;

/// Which coordinate system completes the flat's two linear forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completion {
    /// The forms replace `x_i` and `x_j`.
    Standard,
    /// The forms replace `x_j` and `x_k` (triple flats only; coordinate
    /// flats have a single natural completion).
    Alternative,
}

fn images<K: Field>(
    f: &Polynomial<K>,
    flat: &Flat,
    n: u32,
    completion: Completion,
) -> Result<(Vec<Polynomial<K>>, [usize; 2])> {
    let ring = f.ring();
    let field = ring.field();
    let x = |t| Polynomial::var(ring, t);
    let mut imgs: Vec<Polynomial<K>> = (0..ring.nvars()).map(x).collect();
    for t in flat.indices() {
        ring.check_index(t)?;
    }
    let z = |e: i64| field.root_of_unity(n, e);
    match (*flat, completion) {
        (Flat::Coordinate { i, j }, _) => Ok((imgs, [i, j])),
        (Flat::Triple { i, j, k, a, b }, Completion::Standard) => {
            // slot i holds u = x_i - z^a x_j, slot j holds v = x_j - z^b x_k
            let (a, b) = (i64::from(a), i64::from(b));
            imgs[i] = &(&x(i) + &x(j).scale(&z(a)?)) + &x(k).scale(&z(a + b)?);
            imgs[j] = &x(j) + &x(k).scale(&z(b)?);
            Ok((imgs, [i, j]))
        }
        (Flat::Triple { i, j, k, a, b }, Completion::Alternative) => {
            // slot j holds u, slot k holds v; x_i stays
            let (a, b) = (i64::from(a), i64::from(b));
            let xj = (&x(i) - &x(j)).scale(&z(-a)?);
            imgs[k] = (&xj - &x(k)).scale(&z(-b)?);
            imgs[j] = xj;
            Ok((imgs, [j, k]))
        }
    }
}

/// Order of vanishing of `f` along `flat`: the least total degree in the
/// flat's two defining forms after a linear change of coordinates. `None`
/// for the zero polynomial. The ring's field must contain the `n`-th roots
/// of unity.
pub fn vanishing_order<K: Field>(f: &Polynomial<K>, flat: &Flat, n: u32) -> Result<Option<u64>> {
    vanishing_order_with(f, flat, n, Completion::Standard, 4)
}

/// As [`vanishing_order`], choosing the completion and the first
/// truncation bound. Terms of degree at least the bound in the flat
/// coordinates are never formed; the bound doubles until something
/// survives, which is exact because lower-degree terms are unaffected.
pub fn vanishing_order_with<K: Field>(
    f: &Polynomial<K>,
    flat: &Flat,
    n: u32,
    completion: Completion,
    first_cap: u64,
) -> Result<Option<u64>> {
    let (imgs, slots) = images(f, flat, n, completion)?;
    if f.is_zero() {
        return Ok(None);
    }
    let total = f.total_degree().expect("nonzero");
    let mut cap = first_cap.max(1);
    loop {
        let g = f.linear_substitution_truncated(&imgs, &slots, cap)?;
        if !g.is_zero() {
            return Ok(Some(g.min_degree_in(&slots)?));
        }
        if cap > total {
            return Err(Error::InvalidConfig("coordinate change annihilated a nonzero polynomial".into()));
        }
        cap *= 2;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FlatOrder {
    pub flat: Flat,
    /// `null` stands for infinity (the polynomial is zero).
    pub order: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymbolicMembership {
    pub m: u64,
    pub holds: bool,
    pub per_flat_orders: Vec<FlatOrder>,
}

impl SymbolicMembership {
    pub fn min_order(&self) -> Option<u64> {
        self.per_flat_orders.iter().filter_map(|o| o.order).min()
    }
}

/// Whether `f` vanishes to order at least `m` along every flat of the
/// arrangement, i.e. lies in the `m`-th symbolic power of the ideal of
/// their union. Orders are computed concurrently, one flat per task.
pub fn symbolic_membership<K: Field>(f: &Polynomial<K>, cfg: &FermatConfig, m: u64) -> Result<SymbolicMembership> {
    if !f.is_homogeneous() {
        return Err(Error::Inhomogeneous);
    }
    let flats = enumerate_flats(cfg);
    let first_cap = (m + 1).max(2);
    let orders = par::map(&flats, |flat| {
        vanishing_order_with(f, flat, cfg.degree(), Completion::Standard, first_cap).map(|order| FlatOrder { flat: *flat, order })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let holds = orders.iter().all(|o| o.order.is_none_or(|d| d >= m));
    Ok(SymbolicMembership { m, holds, per_flat_orders: orders })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{fermat_polynomial, ideal_generators};
    use crate::field::{CyclotomicField, PrimeField};
    use crate::poly::PolyRing;

    fn cyc(dim: usize, n: u32) -> (FermatConfig, crate::poly::RingRef<CyclotomicField>) {
        let c = FermatConfig::new(dim, n).unwrap();
        (c, c.ring(CyclotomicField::new(n).unwrap()))
    }

    #[test]
    fn linear_examples() {
        let r = PolyRing::new(CyclotomicField::new(3).unwrap(), 3);
        let x0 = Polynomial::var(&r, 0);
        assert_eq!(vanishing_order(&x0, &Flat::coordinate(0, 1).unwrap(), 3).unwrap(), Some(1));
        assert_eq!(vanishing_order(&x0, &Flat::coordinate(1, 2).unwrap(), 3).unwrap(), Some(0));
        assert_eq!(vanishing_order(&Polynomial::zero(&r), &Flat::coordinate(1, 2).unwrap(), 3).unwrap(), None);
        let t = Flat::triple(0, 1, 2, 1, 2, 3).unwrap();
        let (u, v) = crate::arrangement::flat_linear_forms(&t, &r, 3).unwrap();
        assert_eq!(vanishing_order(&u, &t, 3).unwrap(), Some(1));
        assert_eq!(vanishing_order(&(&u * &(&v * &v)), &t, 3).unwrap(), Some(3));
    }

    #[test]
    fn fermat_orders_on_the_plane() {
        let (c, r) = cyc(2, 3);
        let f = fermat_polynomial(&c, &r).unwrap();
        assert_eq!(vanishing_order(&f, &Flat::coordinate(1, 2).unwrap(), 3).unwrap(), Some(3));
        for a in 0..3 {
            for b in 0..3 {
                let t = Flat::triple(0, 1, 2, a, b, 3).unwrap();
                assert_eq!(vanishing_order(&f, &t, 3).unwrap(), Some(3));
            }
        }
        let sm = symbolic_membership(&f, &c, 3).unwrap();
        assert!(sm.holds);
        assert!(sm.per_flat_orders.iter().all(|o| o.order == Some(3)));
        assert!(!symbolic_membership(&f, &c, 4).unwrap().holds);
    }

    #[test]
    fn completions_agree() {
        for (dim, n) in [(2, 3), (3, 3), (2, 4)] {
            let (c, r) = cyc(dim, n);
            let f = fermat_polynomial(&c, &r).unwrap();
            let g = &ideal_generators(&c, &r).unwrap()[0];
            let probe = &f + &(g * &g.pow(2));
            for flat in enumerate_flats(&c) {
                for p in [&f, g, &probe] {
                    let std = vanishing_order_with(p, &flat, n, Completion::Standard, 1).unwrap();
                    let alt = vanishing_order_with(p, &flat, n, Completion::Alternative, 1).unwrap();
                    let full = vanishing_order_with(p, &flat, n, Completion::Standard, 1 << 20).unwrap();
                    assert_eq!(std, alt, "{flat}");
                    assert_eq!(std, full, "{flat}");
                }
            }
        }
    }

    #[test]
    fn generators_are_in_the_first_symbolic_power() {
        for (dim, n) in [(2, 3), (3, 3), (3, 4)] {
            let (c, r) = cyc(dim, n);
            for g in ideal_generators(&c, &r).unwrap() {
                assert!(symbolic_membership(&g, &c, 1).unwrap().holds);
            }
        }
    }

    #[test]
    fn works_over_prime_fields_with_roots() {
        let c = FermatConfig::new(2, 3).unwrap();
        let r = c.ring(PrimeField::new(7).unwrap());
        let f = fermat_polynomial(&c, &r).unwrap();
        assert!(symbolic_membership(&f, &c, 3).unwrap().holds);
        let rq = c.ring(crate::field::Rationals);
        let fq = fermat_polynomial(&c, &rq).unwrap();
        assert!(symbolic_membership(&fq, &c, 3).is_err());
    }
}
