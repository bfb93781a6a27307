//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line and enforcing its runtime budget. All comparisons are exact
//! integer equality.
//!
//! Run with: cargo test --test acceptance -- --nocapture

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crystals::corpus::{nonisomorphic_loopless_digraphs, random_balanced_matrix, random_projection_album};
use crystals::tensor::increasing_tuples;
use crystals::{
    aip_level_k, brute_homomorphism, certify_fooling, fooling_matrix, is_alternating,
    is_polymorphism, mine_crystal, solve_diophantine, verify_crystal, verify_free_edge, Album,
    BigMatrix, CrystalWitness, Digraph, FunctionTable, IntTensor, Shape,
};

fn criterion(number: usize, name: &str, budget: Duration, body: impl FnOnce() + std::panic::UnwindSafe) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(body);
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("criterion {number} ({name}): PASS in {elapsed:.2?} (budget {budget:.2?})");
        }
        Ok(()) => {
            println!("criterion {number} ({name}): FAIL (over budget: {elapsed:.2?} > {budget:.2?})");
            panic!("criterion {number} exceeded its runtime budget");
        }
        Err(cause) => {
            println!("criterion {number} ({name}): FAIL in {elapsed:.2?}");
            std::panic::resume_unwind(cause);
        }
    }
}

fn fooling_picture() -> IntTensor {
    IntTensor::matrix(vec![vec![0, 0, 1], vec![1, 0, -1], vec![0, 0, 0]]).unwrap()
}

#[test]
fn criterion_01_crystal_existence() {
    criterion(1, "crystal existence", Duration::from_secs(1), || {
        let m = fooling_picture();
        let crystal = mine_crystal(&m, 4).unwrap();
        assert_eq!(crystal.shape(), &Shape::cubical(3, 4).unwrap());
        let pairs = increasing_tuples(4, 2);
        assert_eq!(pairs.len(), 6);
        for axes in pairs {
            assert_eq!(crystal.project(&axes).unwrap(), m, "projection {axes:?}");
        }
    });
}

#[test]
fn criterion_02_crystal_generality() {
    criterion(2, "crystal generality", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for case in 0..100 {
            let n = rng.gen_range(2..=4);
            let m = random_balanced_matrix(&mut rng, n, 3);
            for q in 2..=7 {
                let crystal = mine_crystal(&m, q)
                    .unwrap_or_else(|e| panic!("case {case} (n={n}, q={q}) failed: {e}"));
                assert!(verify_crystal(&crystal, &m).unwrap(), "case {case} (n={n}, q={q})");
            }
        }
    });
}

#[test]
fn criterion_03_realization_soundness_completeness() {
    criterion(3, "realization soundness and completeness", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut albums = Vec::new();
        for case in 0..200 {
            let album = random_projection_album(&mut rng);
            assert!(album.is_realistic(), "projection album {case} must be realistic");
            let tensor = album.realize().unwrap_or_else(|e| panic!("album {case}: {e}"));
            for (axes, picture) in album.pictures() {
                assert_eq!(&tensor.project(axes).unwrap(), picture, "album {case} at {axes:?}");
            }
            albums.push(album);
        }
        // single-entry perturbations: rejected, or still realizable
        let perturbable: Vec<&Album> = albums.iter().filter(|a| !a.pictures().is_empty()).collect();
        for case in 0..50 {
            let album = perturbable[rng.gen_range(0..perturbable.len())];
            let axes_list: Vec<_> = album.pictures().keys().cloned().collect();
            let target = &axes_list[rng.gen_range(0..axes_list.len())];
            let picture = album.picture(target).unwrap();
            let cell = rng.gen_range(0..picture.shape().cell_count());
            let delta = *[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
            let mut entries = picture.entries().to_vec();
            entries[cell] += delta;
            let perturbed_picture = IntTensor::new(picture.shape().clone(), entries).unwrap();
            let mut pictures = album.pictures().clone();
            pictures.insert(target.clone(), perturbed_picture);
            let perturbed = Album::new(album.p(), album.shape().clone(), pictures).unwrap();
            match perturbed.realize() {
                Ok(tensor) => {
                    assert!(perturbed.is_realistic(), "perturbation {case}: accepted albums are realistic");
                    for (axes, picture) in perturbed.pictures() {
                        assert_eq!(
                            &tensor.project(axes).unwrap(),
                            picture,
                            "perturbation {case} at {axes:?}: accepted album must realize"
                        );
                    }
                }
                Err(crystals::Error::Realism(_)) => {
                    assert!(!perturbed.is_realistic(), "perturbation {case}: rejection matches the check");
                }
                Err(other) => panic!("perturbation {case}: unexpected error {other}"),
            }
        }
    });
}

#[test]
fn criterion_04_diophantine_engine() {
    criterion(4, "diophantine engine", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for case in 0..200 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let entries: Vec<BigInt> = (0..rows * cols)
                .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
                .collect();
            let a = BigMatrix::new(rows, cols, entries).unwrap();
            let x0: Vec<BigInt> = (0..cols).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect();
            let b = a.mul_vec(&x0).unwrap();
            let result = solve_diophantine(&a, &b).unwrap();
            let witness = result.witness.unwrap_or_else(|| panic!("case {case} is feasible by construction"));
            assert_eq!(a.mul_vec(&witness).unwrap(), b, "case {case}: exact witness");
        }
        // one-sided agreement with boxed brute force on 4-variable systems
        for case in 0..12 {
            let rows = rng.gen_range(1..=3);
            let coeffs: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..4).map(|_| rng.gen_range(-3i64..=3)).collect())
                .collect();
            let b: Vec<i64> = (0..rows).map(|_| rng.gen_range(-3i64..=3)).collect();
            let a = BigMatrix::from_rows(coeffs.clone()).unwrap();
            let rhs: Vec<BigInt> = b.iter().map(|&v| BigInt::from(v)).collect();
            let result = solve_diophantine(&a, &rhs).unwrap();

            let mut boxed = None;
            'outer: for x1 in -20i64..=20 {
                for x2 in -20i64..=20 {
                    for x3 in -20i64..=20 {
                        for x4 in -20i64..=20 {
                            let x = [x1, x2, x3, x4];
                            if coeffs
                                .iter()
                                .zip(&b)
                                .all(|(row, &t)| row.iter().zip(&x).map(|(c, v)| c * v).sum::<i64>() == t)
                            {
                                boxed = Some(x);
                                break 'outer;
                            }
                        }
                    }
                }
            }
            if let Some(found) = boxed {
                assert!(result.is_feasible(), "case {case}: brute force found {found:?}");
            }
            if let Some(witness) = &result.witness {
                assert_eq!(a.mul_vec(witness).unwrap(), rhs, "case {case}: witness checks directly");
            }
        }
    });
}

#[test]
fn criterion_05_aip_yes_side_soundness() {
    criterion(5, "relaxation soundness on the YES side", Duration::from_secs(300), || {
        let templates = [Digraph::clique(2).unwrap(), Digraph::clique(3).unwrap()];
        let mut checked = 0;
        for g in nonisomorphic_loopless_digraphs(4) {
            for h in &templates {
                if brute_homomorphism(&g, h).unwrap().is_none() {
                    continue;
                }
                for k in 1..=3 {
                    let verdict = aip_level_k(&g, h, k).unwrap();
                    assert!(
                        verdict.yes,
                        "G on {} vertices with edges {:?} maps to K{}, level {k} must accept",
                        g.vertex_count(),
                        g.edges(),
                        h.vertex_count()
                    );
                    let witness = verdict.witness.expect("YES carries a witness");
                    assert!(verdict.system.verify_witness(&witness));
                    checked += 1;
                }
            }
        }
        assert!(checked > 300, "expected hundreds of YES instances, got {checked}");
    });
}

#[test]
fn criterion_06_uncolourable_cliques_accepted() {
    criterion(6, "uncolourable cliques accepted, direct solve", Duration::from_secs(120), || {
        let k3 = Digraph::clique(3).unwrap();
        let k4 = Digraph::clique(4).unwrap();
        let k5 = Digraph::clique(5).unwrap();
        assert!(aip_level_k(&k4, &k3, 2).unwrap().yes, "level 2 accepts K4 over K3");
        assert!(aip_level_k(&k4, &k3, 3).unwrap().yes, "level 3 accepts K4 over K3");
        assert!(aip_level_k(&k5, &k3, 3).unwrap().yes, "level 3 accepts K5 over K3");
        assert!(brute_homomorphism(&k4, &k3).unwrap().is_none(), "K4 has no 3-colouring");
        assert!(
            brute_homomorphism(&k5, &Digraph::clique(4).unwrap()).unwrap().is_none(),
            "K5 has no 4-colouring"
        );
    });
}

#[test]
fn criterion_07_witness_certification() {
    criterion(7, "uncolourable cliques accepted, certified witness", Duration::from_secs(60), || {
        let k4 = Digraph::clique(4).unwrap();
        let k5 = Digraph::clique(5).unwrap();
        assert!(certify_fooling(&k4, 3, 2).unwrap());
        assert!(certify_fooling(&k4, 3, 3).unwrap());
        assert!(certify_fooling(&k5, 3, 2).unwrap());

        // the distribution recovered behind edge (1,2) of K4 at three
        // colours, level 3: weight one on (1,3) and (2,1), minus one on (2,3)
        let template = Digraph::clique(3).unwrap();
        let witness = CrystalWitness::build(&k4, 3, 3).unwrap();
        let candidate = witness.edge_candidate((1, 2)).unwrap();
        let q = verify_free_edge(&candidate, &template).unwrap().expect("certifies");
        let expected: std::collections::BTreeMap<(usize, usize), i64> =
            [((1, 3), 1), ((2, 1), 1), ((2, 3), -1)].into_iter().collect();
        for (edge, &value) in template.edges().iter().zip(q.entries()) {
            assert_eq!(value, expected.get(edge).copied().unwrap_or(0), "weight on {edge:?}");
        }
    });
}

#[test]
fn criterion_08_negative_control() {
    criterion(8, "negative control at two colours", Duration::from_secs(10), || {
        let k2 = Digraph::clique(2).unwrap();
        let c5 = Digraph::cycle(5).unwrap();
        let c6 = Digraph::cycle(6).unwrap();
        for k in 1..=2 {
            assert!(!aip_level_k(&c5, &k2, k).unwrap().yes, "C5 vs K2 at level {k}");
            assert!(aip_level_k(&c6, &k2, k).unwrap().yes, "C6 vs K2 at level {k}");
        }
        assert!(fooling_matrix(2).is_err(), "no fooling matrix on two colours");
    });
}

#[test]
fn criterion_09_polymorphism_checks() {
    criterion(9, "polymorphism checks", Duration::from_secs(10), || {
        let k2 = Digraph::clique(2).unwrap();
        for arity in [3, 5, 7] {
            let parity = FunctionTable::parity(arity).unwrap();
            assert!(is_alternating(&parity).unwrap(), "parity alternating at arity {arity}");
            assert!(is_polymorphism(&parity, &k2).unwrap(), "parity polymorphism at arity {arity}");
        }
        let constant = FunctionTable::constant(2, 3, 1).unwrap();
        assert!(is_alternating(&constant).unwrap(), "constant is alternating");
        assert!(!is_polymorphism(&constant, &k2).unwrap(), "constant is no polymorphism");
    });
}

#[test]
fn criterion_10_projection_operator_properties() {
    criterion(10, "projection operator property suite", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let random_shape = |rng: &mut ChaCha8Rng, max_rank: usize| -> Shape {
            let q = rng.gen_range(0..=max_rank);
            Shape::new((0..q).map(|_| rng.gen_range(1..=4)).collect()).unwrap()
        };
        let random_positions = |rng: &mut ChaCha8Rng, q: usize, max_len: usize| -> Vec<usize> {
            if q == 0 {
                return Vec::new();
            }
            let p = rng.gen_range(0..=max_len);
            (0..p).map(|_| rng.gen_range(1..=q)).collect()
        };
        let random_tensor = |rng: &mut ChaCha8Rng, shape: &Shape| -> IntTensor {
            let entries = (0..shape.cell_count()).map(|_| rng.gen_range(-4i64..=4)).collect();
            IntTensor::new(shape.clone(), entries).unwrap()
        };

        // all-one: the empty-selector operator is the all-one tensor, and
        // the scalar unit tensor is the number one
        for _ in 0..500 {
            let n = random_shape(&mut rng, 4);
            let pi = IntTensor::projection(&n, &[]).unwrap();
            assert_eq!(pi.shape(), &n);
            assert!(pi.entries().iter().all(|&v| v == 1));
        }
        assert_eq!(IntTensor::unit(Shape::scalar(), &[]).unwrap(), IntTensor::scalar(1));

        // entry description: a unit row of the operator is the sum of the
        // unit tensors over the matching fiber
        for round in 0..500 {
            let n = random_shape(&mut rng, 4);
            let q = n.rank();
            let positions = random_positions(&mut rng, q, 3);
            let selected = n.select(&positions).unwrap();
            let a: Vec<usize> = selected.sizes().iter().map(|&s| rng.gen_range(1..=s)).collect();
            let pi = IntTensor::projection(&n, &positions).unwrap();
            let unit_a = IntTensor::unit(selected.clone(), &a).unwrap();
            let row = unit_a.contract(&pi, selected.rank()).unwrap();
            let mut fiber_sum = IntTensor::zeros(n.clone());
            for b in n.each_index() {
                if crystals::tensor::project_tuple(&b, &positions).unwrap() == a {
                    fiber_sum = fiber_sum.add(&IntTensor::unit(n.clone(), &b).unwrap()).unwrap();
                }
            }
            assert_eq!(row, fiber_sum, "round {round}");
        }

        // composition: projecting a selector, then building one operator,
        // equals contracting the two stage operators
        for round in 0..500 {
            let n = random_shape(&mut rng, 4);
            let q = n.rank();
            let i = random_positions(&mut rng, q, 3);
            let j = random_positions(&mut rng, i.len(), 3);
            let composed = crystals::tensor::project_tuple(&i, &j).unwrap();
            let lhs = IntTensor::projection(&n, &composed).unwrap();
            let inner = IntTensor::projection(&n.select(&i).unwrap(), &j).unwrap();
            let outer = IntTensor::projection(&n, &i).unwrap();
            let rhs = inner.contract(&outer, i.len()).unwrap();
            assert_eq!(lhs, rhs, "round {round}: i={i:?} j={j:?}");
        }

        // identity: the full increasing selector acts as the identity
        for round in 0..500 {
            let n = random_shape(&mut rng, 4);
            let t = random_tensor(&mut rng, &n);
            let identity: Vec<usize> = (1..=n.rank()).collect();
            assert_eq!(t.project(&identity).unwrap(), t, "round {round}");
        }

        // associativity of contraction on compatible triples
        for round in 0..500 {
            let shared_a = random_shape(&mut rng, 2);
            let shared_b = random_shape(&mut rng, 2);
            let lead = random_shape(&mut rng, 2);
            let trail = random_shape(&mut rng, 2);
            let t = random_tensor(&mut rng, &lead.concat(&shared_a));
            let u = random_tensor(&mut rng, &shared_a.concat(&shared_b));
            let v = random_tensor(&mut rng, &shared_b.concat(&trail));
            let left = t
                .contract(&u, shared_a.rank())
                .unwrap()
                .contract(&v, shared_b.rank())
                .unwrap();
            let right = t
                .contract(&u.contract(&v, shared_b.rank()).unwrap(), shared_a.rank())
                .unwrap();
            assert_eq!(left, right, "round {round}");
        }

        // the direct fiber summation agrees with the materialised operator
        for round in 0..500 {
            let n = random_shape(&mut rng, 4);
            let t = random_tensor(&mut rng, &n);
            let positions = random_positions(&mut rng, n.rank(), 3);
            let direct = t.project(&positions).unwrap();
            let operator = IntTensor::projection(&n, &positions).unwrap();
            assert_eq!(direct, operator.contract(&t, n.rank()).unwrap(), "round {round}");
        }
    });
}
