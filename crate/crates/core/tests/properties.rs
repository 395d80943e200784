use nctorus::catalog::four_torus_fixtures;
use nctorus::cyclotomic::{cyclotomic_companion, cyclotomic_poly, divisors, euler_phi, IntPoly};
use nctorus::exactla::{
    int_kernel, rank_q, rat_kernel, smith_normal_form, to_rational, unimodular_inverse,
};
use nctorus::forms::{add_forms, average_form, is_invariant, param_form, rational_form};
use nctorus::ktheory::{
    exterior_power_matrix, exterior_traces, fixed_rank_by_kernel, fixed_ranks_by_trace,
};
use nctorus::simplicity::{is_nondegenerate, verify_witness};
use nctorus::verify::{kernel_is_saturated, random_isotropy_element, random_skew_form};
use nctorus::weyl::{act, cocycle, inverse, multiply, normal_order, word_to_element, WeylElement};
use nctorus::{Int, IntMatrix, Matrix, ParamMatrix, ParamScalar, Rat, RatMatrix};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn rect(bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=5).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| Matrix::from_vec(r, c, ints(&v)).unwrap())
    })
}

fn form(seed: u64, d: usize) -> ParamMatrix {
    random_skew_form(&mut ChaCha8Rng::seed_from_u64(seed), d)
}

fn vec_of(d: usize, bound: i64) -> impl Strategy<Value = Vec<Int>> {
    prop::collection::vec(-bound..=bound, d).prop_map(|v| ints(&v))
}

/// Skew form whose constant part has denominators up to 3 and whose single
/// parameter part is sparse, so degenerate forms turn up often.
fn sparse_form(d: usize) -> impl Strategy<Value = ParamMatrix> {
    let m = d * (d - 1) / 2;
    (
        prop::collection::vec((-2i64..=2, 1i64..=3), m),
        prop::collection::vec(prop_oneof![3 => Just(0i64), 1 => -2i64..=2], m),
    )
        .prop_map(move |(consts, params)| {
            let mut c = RatMatrix::zeros(d, d);
            let mut p = RatMatrix::zeros(d, d);
            let mut k = 0;
            for i in 0..d {
                for j in i + 1..d {
                    let q = Rat::new(consts[k].0.into(), consts[k].1.into());
                    c.set(j, i, -q.clone());
                    c.set(i, j, q);
                    let t = Rat::from_integer(params[k].into());
                    p.set(j, i, -t.clone());
                    p.set(i, j, t);
                    k += 1;
                }
            }
            add_forms(&rational_form(&c), &param_form("theta", &p)).unwrap()
        })
}

/// `Theta x` lands in `Z^d`: every parameter part vanishes and the constant
/// part is integral.
fn is_degenerate_at(theta: &ParamMatrix, x: &[Int]) -> bool {
    (0..theta.rows()).all(|i| {
        let mut s = ParamScalar::zero();
        for (j, xj) in x.iter().enumerate() {
            s = s + theta.get(i, j).scale_int(xj);
        }
        s.is_rational() && s.const_part().is_integer()
    })
}

fn box_vectors(d: usize, b: i64) -> Vec<Vec<Int>> {
    let side = (2 * b + 1) as usize;
    (0..side.pow(d as u32))
        .map(|mut k| {
            (0..d)
                .map(|_| {
                    let x = (k % side) as i64 - b;
                    k /= side;
                    Int::from(x)
                })
                .collect()
        })
        .filter(|v: &Vec<Int>| v.iter().any(|x| !x.is_zero()))
        .collect()
}

fn sup_norm(v: &[Int]) -> Int {
    v.iter().map(Int::abs).max().unwrap_or_default()
}

fn isotropy_gens() -> Vec<IntMatrix> {
    let fx = four_torus_fixtures().unwrap();
    let mut gens: Vec<IntMatrix> = fx.a.values().cloned().collect();
    let inverses: Vec<IntMatrix> = gens
        .iter()
        .map(|a| unimodular_inverse(a).unwrap())
        .collect();
    gens.extend(inverses);
    gens
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cocycle_identity(seed in any::<u64>(), d in 2usize..=5, (x, y, z) in (vec_of(5, 6), vec_of(5, 6), vec_of(5, 6))) {
        let th = form(seed, d);
        let (x, y, z) = (&x[..d], &y[..d], &z[..d]);
        let xy: Vec<Int> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let yz: Vec<Int> = y.iter().zip(z).map(|(a, b)| a + b).collect();
        let lhs = cocycle(&th, x, y).unwrap().add(&cocycle(&th, &xy, z).unwrap());
        let rhs = cocycle(&th, y, z).unwrap().add(&cocycle(&th, x, &yz).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_associative(seed in any::<u64>(), x in vec_of(3, 4), y in vec_of(3, 4), z in vec_of(3, 4)) {
        let th = form(seed, 3);
        let (g, h, k) = (WeylElement::monomial(x), WeylElement::monomial(y), WeylElement::monomial(z));
        let left = multiply(&th, &multiply(&th, &g, &h).unwrap(), &k).unwrap();
        let right = multiply(&th, &g, &multiply(&th, &h, &k).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let one = multiply(&th, &g, &inverse(&th, &g).unwrap()).unwrap();
        prop_assert_eq!(one, WeylElement::identity(3));
    }

    #[test]
    fn cocycle_invariant_under_isotropy(seed in any::<u64>(), x in vec_of(4, 8), y in vec_of(4, 8)) {
        let fx = four_torus_fixtures().unwrap();
        let a = random_isotropy_element(&mut ChaCha8Rng::seed_from_u64(seed), &isotropy_gens());
        let before = cocycle(&fx.theta_tensor, &x, &y).unwrap();
        let after = cocycle(&fx.theta_tensor, &a.mul_vec(&x).unwrap(), &a.mul_vec(&y).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn isotropy_closed_under_products_and_inverses(s1 in any::<u64>(), s2 in any::<u64>()) {
        let fx = four_torus_fixtures().unwrap();
        let gens = isotropy_gens();
        let a = random_isotropy_element(&mut ChaCha8Rng::seed_from_u64(s1), &gens);
        let b = random_isotropy_element(&mut ChaCha8Rng::seed_from_u64(s2), &gens);
        prop_assert!(is_invariant(&(&a * &b), &fx.theta_tensor).unwrap());
        prop_assert!(is_invariant(&unimodular_inverse(&a).unwrap(), &fx.theta_tensor).unwrap());
    }

    #[test]
    fn act_is_functorial_and_multiplicative(s1 in any::<u64>(), s2 in any::<u64>(), x in vec_of(4, 5), y in vec_of(4, 5)) {
        let th = four_torus_fixtures().unwrap().theta_tensor;
        let gens = isotropy_gens();
        let a = random_isotropy_element(&mut ChaCha8Rng::seed_from_u64(s1), &gens);
        let b = random_isotropy_element(&mut ChaCha8Rng::seed_from_u64(s2), &gens);
        let (g, h) = (WeylElement::monomial(x), WeylElement::monomial(y));
        let composed = act(&th, &a, &act(&th, &b, &g).unwrap()).unwrap();
        prop_assert_eq!(composed, act(&th, &(&a * &b), &g).unwrap());
        let gh = multiply(&th, &g, &h).unwrap();
        let images = multiply(&th, &act(&th, &a, &g).unwrap(), &act(&th, &a, &h).unwrap()).unwrap();
        prop_assert_eq!(act(&th, &a, &gh).unwrap(), images);
    }

    #[test]
    fn normal_order_round_trip(seed in any::<u64>(), d in 1usize..=5, y in vec_of(5, 4)) {
        let th = form(seed, d.max(2));
        let y = &y[..d.max(2)];
        let back = word_to_element(&th, &normal_order(&th, y).unwrap()).unwrap();
        prop_assert_eq!(back, WeylElement::monomial(y.to_vec()));
    }

    #[test]
    fn smith_reconstruction(m in rect(12)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&s.u.try_mul(&m).unwrap().try_mul(&s.v).unwrap(), &s.d);
        prop_assert!(s.u.det().unwrap().abs().is_one());
        prop_assert!(s.v.det().unwrap().abs().is_one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn kernel_saturated_and_spans_rational_kernel(m in rect(4)) {
        let basis = int_kernel(&m);
        prop_assert!(kernel_is_saturated(&m, &basis).unwrap());
        let q = rat_kernel(&to_rational(&m));
        prop_assert_eq!(q.len(), basis.len());
        if !basis.is_empty() {
            // every rational kernel vector lies in the rational span of the basis
            let k = to_rational(&Matrix::from_columns(m.cols(), &basis).unwrap());
            for v in q {
                let v = Matrix::from_columns(m.cols(), &[v]).unwrap();
                let mut cols = (0..k.cols()).map(|j| k.column(j)).collect::<Vec<_>>();
                cols.push(v.column(0));
                let stacked = Matrix::from_columns(m.cols(), &cols).unwrap();
                prop_assert_eq!(rank_q(&stacked), basis.len());
            }
        }
    }

    #[test]
    fn rank_plus_nullity(m in rect(6)) {
        let q = to_rational(&m);
        prop_assert_eq!(rank_q(&q) + rat_kernel(&q).len(), m.cols());
    }

    #[test]
    fn alternating_trace_sum_is_det(d in 1usize..=5, seed in any::<u64>()) {
        let m = nctorus::verify::random_int_matrix(&mut ChaCha8Rng::seed_from_u64(seed), d, d, 3);
        let e = exterior_traces(&m).unwrap();
        let alt: Int = e.iter().enumerate().map(|(l, t)| if l % 2 == 0 { t.clone() } else { -t }).sum();
        let shifted = &IntMatrix::identity(d) - &m;
        prop_assert_eq!(alt, shifted.det().unwrap());
        for (l, t) in e.iter().enumerate() {
            prop_assert_eq!(&exterior_power_matrix(&m, l).unwrap().trace().unwrap(), t);
        }
    }

    #[test]
    fn averaging_gives_invariant_forms(n in 3u64..=12, seed in any::<u64>()) {
        let c = cyclotomic_companion(n).unwrap();
        let th = form(seed, c.rows());
        let avg = average_form(&c, n, &th).unwrap();
        prop_assert!(is_invariant(&c, &avg).unwrap());
    }

    #[test]
    fn nondegeneracy_matches_brute_force(d in 2usize..=3, th in sparse_form(3)) {
        let th = if d == 2 {
            Matrix::from_fn(2, 2, |i, j| th.get(i, j).clone())
        } else {
            th
        };
        let verdict = is_nondegenerate(&th).unwrap();
        let found: Vec<Vec<Int>> = box_vectors(d, 3).into_iter().filter(|x| is_degenerate_at(&th, x)).collect();
        match &verdict.witness {
            None => prop_assert!(found.is_empty(), "missed witness {:?}", found[0]),
            Some(w) => {
                prop_assert!(verify_witness(&th, w).unwrap());
                prop_assert!(is_degenerate_at(&th, w));
                if let Some(best) = found.iter().map(|x| sup_norm(x)).min() {
                    prop_assert!(sup_norm(w) <= best);
                }
            }
        }
    }

    #[test]
    fn trace_and_kernel_routes_agree_on_powers(n in 2u64..=14, k in 1u64..=13) {
        let c = cyclotomic_companion(n).unwrap();
        let a = c.pow(k).unwrap();
        let by_trace = fixed_ranks_by_trace(&a, n).unwrap();
        for (l, r) in by_trace.iter().enumerate() {
            prop_assert_eq!(*r, fixed_rank_by_kernel(&a, l).unwrap());
        }
    }
}

#[test]
fn cyclotomic_invariants() {
    for n in 1..=120u64 {
        let p = cyclotomic_poly(n).unwrap();
        assert!(p.is_monic(), "n = {n}");
        assert_eq!(p.degree(), Some(euler_phi(n).unwrap() as usize));
        let product = divisors(n)
            .into_iter()
            .map(|d| cyclotomic_poly(d).unwrap())
            .fold(IntPoly::from_i64(&[1]), |acc, q| acc.mul(&q));
        assert_eq!(product, IntPoly::x_pow_minus_one(n as usize), "n = {n}");
        let c = cyclotomic_companion(n).unwrap();
        assert!(c.pow(n).unwrap().is_identity());
    }
}
