use lieq::lie::{oracle_dimension, oracle_embed, FreeLie, Gen, GeneratorSet, LieElement};
use lieq::scalar::{parity_sign, q, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_set(rng: &mut ChaCha8Rng) -> GeneratorSet {
    let n = rng.gen_range(1..=3);
    let spec: Vec<(String, u32)> = (0..n).map(|i| (format!("g{i}"), rng.gen_range(1..=3))).collect();
    GeneratorSet::new(&spec).unwrap()
}

fn random_expr(rng: &mut ChaCha8Rng, gens: &[Gen], depth: u32) -> LieElement<Gen> {
    if depth == 0 || rng.gen_bool(0.3) {
        let g = gens[rng.gen_range(0..gens.len())].clone();
        return LieElement::letter(g);
    }
    let a = random_expr(rng, gens, depth - 1);
    let b = random_expr(rng, gens, depth - 1);
    a.bracket(&b).scaled(&q(rng.gen_range(1..=3)))
}

#[test]
fn bracket_matches_commutator_and_zero_tests_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let s = random_set(&mut rng);
        let x = random_expr(&mut rng, s.gens(), 3);
        let y = random_expr(&mut rng, s.gens(), 2);
        let xy = x.bracket(&y);
        let lhs = oracle_embed(&xy);
        let rhs = oracle_embed(&x).commutator(&oracle_embed(&y));
        assert_eq!(lhs, rhs, "oracle soundness on [{x}, {y}]");
        assert_eq!(xy.is_zero(), lhs.is_zero(), "faithfulness on [{x}, {y}]");
    }
}

#[test]
fn basis_dimensions_match_oracle() {
    for spec in [vec![("a", 1)], vec![("a", 1), ("b", 1)], vec![("a", 1), ("b", 2)], vec![("a", 2), ("b", 3), ("c", 1)]] {
        let s = GeneratorSet::new(&spec).unwrap();
        let f = FreeLie::new(s.gens().to_vec(), 7);
        for d in 1..=7 {
            let basis = f.basis(d).unwrap();
            assert_eq!(basis.len(), oracle_dimension::<Gen, Q>(s.gens(), d), "{spec:?} degree {d}");
            let elems: Vec<LieElement<Gen>> = basis.monomials.iter().cloned().map(LieElement::monomial).collect();
            assert_eq!(lieq::lie::oracle_rank(&elems), basis.len(), "basis independent {spec:?} {d}");
        }
    }
}

#[test]
fn antisymmetry_and_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..150 {
        let s = random_set(&mut rng);
        let x = random_expr(&mut rng, s.gens(), 2);
        let y = random_expr(&mut rng, s.gens(), 2);
        let z = random_expr(&mut rng, s.gens(), 1);
        if x.is_zero() || y.is_zero() || z.is_zero() {
            continue;
        }
        let (dx, dy) = (x.degree().unwrap() as i64, y.degree().unwrap() as i64);
        let anti = x.bracket(&y) + y.bracket(&x).scaled(&q(parity_sign(dx * dy)));
        assert!(anti.is_zero());
        // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
        let jac = x.bracket(&y.bracket(&z))
            - x.bracket(&y).bracket(&z)
            - y.bracket(&x.bracket(&z)).scaled(&q(parity_sign(dx * dy)));
        assert!(jac.is_zero(), "Jacobi on {x}, {y}, {z}");
    }
}
