mod common;

use std::sync::OnceLock;

use common::*;
use jacobi_core::diagram::{Diagram, Label};
use jacobi_core::element::Element;
use jacobi_core::hopf::{
    antipode, bracket, chi, chi_inv, coproduct, is_primitive, min_loop_degree, normalize_tensor, ordered_product, star,
    tensor_add_diagrams, Tensor,
};
use jacobi_core::quotient::{normal_form, sp_act_element};
use jacobi_core::symplectic::SpGenerator;
use jacobi_core::q;
use num_traits::Signed;
use proptest::prelude::*;
use rand::Rng;

fn degree_one() -> &'static [Diagram] {
    static POOL: OnceLock<Vec<Diagram>> = OnceLock::new();
    POOL.get_or_init(|| connected(3, 1))
}

fn degree_two() -> &'static [Diagram] {
    static POOL: OnceLock<Vec<Diagram>> = OnceLock::new();
    POOL.get_or_init(|| connected(3, 2))
}

fn element(seed: u64, pool: &[Diagram]) -> Element {
    let mut r = rng(seed);
    let terms = r.gen_range(1..4);
    random_combination(pool, terms, &mut r)
}

fn nf_eq(a: &Element, b: &Element) -> bool {
    normal_form(&a.sub(b)).is_zero()
}

/// `Δ(x ⋆ y)` against `Δx ⋆ Δy` computed factorwise.
fn tensor_star(s: &Tensor, t: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for ((a1, b1), c1) in s {
        for ((a2, b2), c2) in t {
            let left = star(&Element::from_diagram(a1), &Element::from_diagram(a2));
            let right = star(&Element::from_diagram(b1), &Element::from_diagram(b2));
            for (x, cx) in left.iter() {
                for (y, cy) in right.iter() {
                    tensor_add_diagrams(&mut out, x, y, c1 * c2 * cx * cy);
                }
            }
        }
    }
    out
}

fn tensor_sub(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = a.clone();
    for ((x, y), c) in b {
        tensor_add_diagrams(&mut out, x, y, -c.clone());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn star_has_the_empty_unit(s in any::<u64>()) {
        let x = element(s, degree_two());
        prop_assert_eq!(star(&Element::one(), &x), x.clone());
        prop_assert_eq!(star(&x, &Element::one()), x);
    }

    #[test]
    fn bracket_is_star_commutator(s in any::<u64>(), t in any::<u64>()) {
        let (x, y) = (element(s, degree_one()), element(t, degree_two()));
        prop_assert!(nf_eq(&bracket(&x, &y), &star(&x, &y).sub(&star(&y, &x))));
    }

    #[test]
    fn coproduct_is_multiplicative(s in any::<u64>(), t in any::<u64>()) {
        let (x, y) = (element(s, degree_one()), element(t, degree_one()));
        let lhs = coproduct(&star(&x, &y));
        let rhs = tensor_star(&coproduct(&x), &coproduct(&y));
        prop_assert!(normalize_tensor(&tensor_sub(&lhs, &rhs)).is_empty());
    }

    #[test]
    fn connected_elements_are_primitive_with_antipode_minus_one(s in any::<u64>()) {
        let x = element(s, degree_two());
        prop_assert!(is_primitive(&x));
        prop_assert_eq!(antipode(&x), x.neg());
    }

    #[test]
    fn antipode_reverses_products(s in any::<u64>(), t in any::<u64>()) {
        let (x, y) = (element(s, degree_one()), element(t, degree_one()));
        let lhs = antipode(&star(&x, &y));
        let rhs = star(&antipode(&y), &antipode(&x));
        prop_assert!(nf_eq(&lhs, &rhs));
    }

    #[test]
    fn chi_is_equivariant(s in any::<u64>(), gi in 0usize..21) {
        let x = element(s, degree_one());
        let g = SpGenerator::all(3)[gi];
        let lhs = chi(&sp_act_element(g, &x, 3).unwrap());
        let rhs = sp_act_element(g, &chi(&x), 3).unwrap();
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn chi_inverse_of_ordered_product_is_star(s in any::<u64>(), t in any::<u64>()) {
        let (x, y) = (element(s, degree_one()), element(t, degree_one()));
        let glued = chi_inv(&ordered_product(&chi(&x), &chi(&y)));
        prop_assert!(nf_eq(&glued, &star(&x, &y)));
    }

    #[test]
    fn star_respects_the_loop_filtration(s in any::<u64>(), t in any::<u64>()) {
        let x = element(s, degree_two());
        let y = element(t, degree_one());
        let (lx, ly) = (min_loop_degree(&x).unwrap_or(0), min_loop_degree(&y).unwrap_or(0));
        let p = normal_form(&star(&x, &y));
        prop_assert!(min_loop_degree(&p).map_or(true, |m| m >= lx + ly));
    }
}

#[test]
fn single_pairing_example() {
    // Y(α1,α2,β3) ⋆ Y(α2,α1,α3): one nonzero pairing, ω(β3,α3) = −1
    let a = |i| Label::Basis(jacobi_core::symplectic::BasisVector::alpha(i));
    let b = |i| Label::Basis(jacobi_core::symplectic::BasisVector::beta(i));
    let d = Diagram::y(a(1), a(2), b(3));
    let e = Diagram::y(a(2), a(1), a(3));
    let glued = d.glue(&e, &[(2, 2)]).unwrap();
    let mut expected = Element::from_diagram(&d.disjoint_union(&e));
    expected.add_diagram(&glued, q(-1, 2));
    assert_eq!(star(&Element::from_diagram(&d), &Element::from_diagram(&e)), expected);
}

#[test]
fn chi_of_y_averages_six_orders() {
    let l = labels(3);
    let y = Element::from_diagram(&Diagram::y(l[0], l[1], l[3]));
    let x = chi(&y);
    assert_eq!(x.len(), 6);
    assert!(x.iter().all(|(d, c)| d.is_ordered() && c.abs() == q(1, 6)));
    assert_eq!(chi_inv(&x), y);
}
