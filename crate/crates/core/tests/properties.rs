use permlie::axioms::{check_algebra, LawId};
use permlie::cli::suites::symplectic_round_trip;
use permlie::doubles::{prelie_to_symplectic, symplectic_to_prelie};
use permlie::families::{catalog, FiniteAlgebra, Product};
use permlie::kernel::linalg::{self, Matrix};
use permlie::kernel::{BasisKey, Scalar, SpaceId, Tensor, Window};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Scalar::int(n) * Scalar::int(d).recip().unwrap())
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-2i64..=2, n * n)
        .prop_map(move |v| v.chunks(n).map(|r| r.iter().map(|x| Scalar::int(*x)).collect()).collect::<Matrix>())
        .prop_filter("singular", move |m| linalg::rank(m) == n)
}

fn in_basis(id: &str, m: &Matrix) -> FiniteAlgebra {
    catalog::algebra(id).unwrap().change_basis(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalars_round_trip_through_json(x in scalar()) {
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&s).unwrap(), x.clone());
        prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
    }

    #[test]
    fn tensors_round_trip_through_json(rows in prop::collection::vec((-3i64..3, 0u32..2, scalar()), 0..6)) {
        let id = SpaceId::new("ex-nil2");
        let t = Tensor::from_terms(rows.into_iter().map(|(i, j, c)| (vec![BasisKey::tee(i), BasisKey::fin(&id, j)], c)));
        let s = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<Tensor>(&s).unwrap(), t);
    }

    #[test]
    fn perm_law_is_basis_independent(m in invertible(2), k in 0usize..3) {
        let id = ["ex-nil2", "ex-semidirect", "ex-left-unit"][k];
        let a = in_basis(id, &m);
        prop_assert!(check_algebra(&a, &a.space(), LawId::Perm, Window::new(1)).unwrap().pass);
    }

    #[test]
    fn commutator_of_pre_lie_is_lie(m in invertible(2), k in 0usize..2) {
        let a = in_basis(["pl-nil2", "pl-left-unit"][k], &m);
        prop_assert!(check_algebra(&a, &a.space(), LawId::PreLie, Window::new(1)).unwrap().pass);
        let g = a.commutator_algebra("g");
        prop_assert!(check_algebra(&g, &g.space(), LawId::LieJacobi, Window::new(1)).unwrap().pass);
        prop_assert!(check_algebra(&g, &g.space(), LawId::LieSkew, Window::new(1)).unwrap().pass);
    }

    #[test]
    fn symplectic_round_trip_after_basis_change(m in invertible(2), k in 0usize..2) {
        let a = in_basis(["pl-nil2", "pl-left-unit"][k], &m);
        let (lie, w) = prelie_to_symplectic(&a).unwrap();
        let back = symplectic_to_prelie(&lie, &w).unwrap();
        let c = back.commutator_algebra("c");
        for i in 0..lie.dim() {
            for j in 0..lie.dim() {
                let (x, y) = (lie.key(i), lie.key(j));
                let (cx, cy) = (c.key(i), c.key(j));
                let got: Vec<(usize, Scalar)> = c.mul(&cx, &cy).iter().map(|(k, v)| (c.index_of(k).unwrap(), v.clone())).collect();
                let want: Vec<(usize, Scalar)> = lie.mul(&x, &y).iter().map(|(k, v)| (lie.index_of(k).unwrap(), v.clone())).collect();
                prop_assert_eq!(got, want);
            }
        }
    }
}

#[test]
fn catalog_round_trips() {
    for id in ["pl-1", "pl-nil2", "pl-left-unit"] {
        assert!(symplectic_round_trip(id).unwrap().pass, "{id}");
    }
}
