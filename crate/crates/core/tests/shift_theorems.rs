use positroid::{
    is_quotient, predicted_circuits, shift_left, shift_right, DecoratedPermutation, FreezeSet, IndexSet, Matroid,
};

fn uniform(k: usize, n: usize) -> DecoratedPermutation {
    DecoratedPermutation::uniform(k, n)
}

fn longest_component(a: IndexSet, n: usize) -> usize {
    FreezeSet::new(a, n).unwrap().lengths().into_iter().max().unwrap_or(0)
}

fn sorted(mut v: Vec<IndexSet>) -> Vec<IndexSet> {
    v.sort();
    v
}

#[test]
fn inverse_of_right_shift_is_left_shift_of_complementary_uniform() {
    for n in 1..=8 {
        for k in 0..=n {
            let pi = uniform(k, n);
            for a in IndexSet::all_subsets(n) {
                let b = IndexSet::from_elements(n, a.iter().map(|v| pi.position_of(v))).unwrap();
                let lhs = shift_right(&pi, a).inverse();
                let rhs = shift_left(&uniform(n - k, n), b);
                assert_eq!(lhs, rhs, "k={k} n={n} A={a}");
            }
        }
    }
}

#[test]
fn left_shift_drops_rank_by_one_when_components_are_short() {
    for n in 2..=8 {
        for k in 2..=n {
            let pi = uniform(k, n);
            for a in IndexSet::all_subsets(n).filter(|&a| longest_component(a, n) < k) {
                let sigma = shift_left(&pi, a);
                assert_eq!(sigma.rank(), k - 1, "k={k} n={n} A={a}");
                assert_eq!(sigma.positroid().rank(), k - 1);
            }
        }
        // k = 1 only admits A = ∅, which is a pure rotation down to rank 0
        assert_eq!(shift_left(&uniform(1, n), IndexSet::EMPTY).rank(), 0);
    }
}

#[test]
fn predicted_circuits_match_brute_force() {
    for n in 1..=8 {
        for k in 1..=n {
            let pi = uniform(k, n);
            for size in 0..k {
                for a in IndexSet::k_subsets(n, size) {
                    let frozen = FreezeSet::new(a, n).unwrap();
                    let predicted = predicted_circuits(k, n, &frozen).unwrap();
                    let sigma = shift_left(&pi, a);
                    let actual = sorted(sigma.positroid().circuits().to_vec());
                    // For k = n the frozen values are coloops of σ, and an interval that runs
                    // over another component cannot be a circuit.
                    let expect_match = k < n || frozen.components().len() <= 1;
                    assert_eq!(predicted.circuits() == &actual[..], expect_match, "k={k} n={n} A={a}");
                }
            }
        }
    }
}

#[test]
fn small_circuits_are_read_off_the_permutation() {
    for n in 2..=8 {
        for k in 2..=n {
            let pi = uniform(k, n);
            for size in 1..k {
                for a in IndexSet::k_subsets(n, size) {
                    let frozen = FreezeSet::new(a, n).unwrap();
                    let sigma = shift_left(&pi, a);
                    let predicted = predicted_circuits(k, n, &frozen).unwrap();
                    for (component, small) in frozen.components().iter().zip(&predicted.small) {
                        let start = component.end % n + 1;
                        assert_eq!(small.start, start);
                        // σ maps the far end of the interval back to its start
                        assert_eq!(sigma.value(small.end), start, "k={k} n={n} A={a}");
                        assert_eq!(small.end, sigma.position_of(start));
                    }
                }
            }
        }
    }
}

#[test]
fn right_shifts_of_uniform_cover_it_from_above() {
    for n in 1..=7 {
        for k in 0..n {
            let lower = Matroid::uniform(n - k, n).unwrap();
            let pi = uniform(n - k, n);
            for size in 0..k {
                for b in IndexSet::k_subsets(n, size) {
                    let tau = shift_right(&pi, b);
                    assert_eq!(tau.rank(), n - k + 1, "k={k} n={n} B={b}");
                    assert!(is_quotient(&lower, &tau.positroid()).unwrap(), "k={k} n={n} B={b}");
                }
            }
        }
    }
}

#[test]
fn left_and_right_shift_undo_each_other_on_images() {
    let mut decoration_changes = 0usize;
    for n in 1..=6 {
        for pi in positroid::enumerate_decorated(n, None, 10).unwrap() {
            for a in IndexSet::all_subsets(n) {
                let back = shift_right(&shift_left(&pi, a), a);
                assert_eq!(back.image(), pi.image());
                if back != pi {
                    // only fixed points on unfrozen positions can change their decoration
                    assert!((1..=n).all(|i| back.decoration(i) == pi.decoration(i) || !a.contains(i)));
                    decoration_changes += 1;
                }
            }
        }
    }
    println!("round trips that redecorate a fixed point: {decoration_changes}");
}

#[test]
fn circuit_formula_beyond_the_size_bound() {
    // Components short enough but |A| >= k: recorded, not asserted.
    let mut checked = 0usize;
    let mut mismatches = 0usize;
    for n in 3..=7 {
        for k in 2..=n {
            let pi = uniform(k, n);
            for size in k..=n {
                for a in IndexSet::k_subsets(n, size).filter(|&a| longest_component(a, n) < k) {
                    let predicted = predicted_circuits(k, n, &FreezeSet::new(a, n).unwrap()).unwrap();
                    let actual = sorted(shift_left(&pi, a).positroid().circuits().to_vec());
                    checked += 1;
                    mismatches += usize::from(predicted.circuits() != &actual[..]);
                }
            }
        }
    }
    println!("|A| >= k with short components: {mismatches} of {checked} differ from the formula");
}
