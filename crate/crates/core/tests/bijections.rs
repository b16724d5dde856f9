use positroid::{
    bases_from_necklace, enumerate_decorated, is_positroid, necklace_from_matroid, perm_from_matroid, IndexSet, Matroid,
};

#[test]
fn perm_necklace_positroid_round_trips() {
    for n in 1..=6 {
        for pi in enumerate_decorated(n, None, 10).unwrap() {
            let necklace = pi.necklace();
            assert_eq!(necklace.to_permutation(), pi);
            let m = bases_from_necklace(&necklace).unwrap();
            assert_eq!(m, pi.positroid());
            assert_eq!(necklace_from_matroid(&m), necklace);
            assert_eq!(perm_from_matroid(&m).unwrap(), pi);
            assert!(is_positroid(&m));
        }
    }
}

#[test]
fn weak_excedance_counts_do_not_depend_on_the_start() {
    for pi in enumerate_decorated(6, None, 10).unwrap() {
        let k = pi.rank();
        for i in 1..=6 {
            assert_eq!(pi.weak_excedances(i).len(), k, "{pi} at i={i}");
            assert_eq!(pi.weak_excedances(i), pi.necklace().get(i));
        }
    }
}

#[test]
fn inverse_permutation_gives_the_dual() {
    for n in 1..=5 {
        for pi in enumerate_decorated(n, None, 10).unwrap() {
            let m = pi.positroid();
            assert_eq!(pi.inverse().positroid(), m.dual(), "{pi}");
            assert_eq!(pi.inverse().rank(), n - pi.rank());
            assert_eq!(pi.inverse().inverse(), pi);
        }
    }
}

#[test]
fn decorations_are_loops_and_coloops() {
    for n in 1..=5 {
        for pi in enumerate_decorated(n, None, 10).unwrap() {
            let m = pi.positroid();
            let loops = IndexSet::from_elements(n, (1..=n).filter(|&i| pi.is_loop(i))).unwrap();
            let coloops = IndexSet::from_elements(n, (1..=n).filter(|&i| pi.is_coloop(i))).unwrap();
            assert_eq!(m.loops(), loops, "{pi}");
            assert_eq!(m.coloops(), coloops, "{pi}");
        }
    }
}

#[test]
fn text_and_json_forms_round_trip() {
    for pi in enumerate_decorated(4, None, 10).unwrap() {
        let text = pi.to_string();
        assert_eq!(text.parse::<positroid::DecoratedPermutation>().unwrap(), pi);
        let json = serde_json::to_string(&pi).unwrap();
        assert_eq!(serde_json::from_str::<positroid::DecoratedPermutation>(&json).unwrap(), pi);
        let necklace = pi.necklace();
        assert_eq!(serde_json::from_str::<positroid::GrassmannNecklace>(&necklace.to_json()).unwrap(), necklace);
        let m = pi.positroid();
        assert_eq!(serde_json::from_str::<Matroid>(&m.to_json()).unwrap(), m);
    }
}

#[test]
fn non_positroids_are_reported_with_their_envelope() {
    // 1 and 3 parallel: every other pair is a basis, the necklace is that of U_{2,4}
    let m = Matroid::from_bases(4, IndexSet::k_subsets(4, 2).filter(|&b| b != IndexSet::of(&[1, 3]))).unwrap();
    assert!(!is_positroid(&m));
    let err = perm_from_matroid(&m).unwrap_err();
    assert!(err.to_string().contains("3,4,1,2"), "{err}");
}
