use wobetti::families::{cycles, forests, stars, StarKind};
use wobetti::{
    betti_table, classify, edge_ideal, evaluate_formula, family_certificate, forest_formula,
    oracle_report, star_formula, Field, OracleConfig, SplitOptions, WeightedOrientedGraph,
};

fn check_against_oracle(d: &WeightedOrientedGraph) {
    let formula = evaluate_formula(d).unwrap();
    let oracle = oracle_report(d, &OracleConfig::default()).unwrap();
    assert!(
        formula.same_invariants(&oracle),
        "{}\nformula {:?}\noracle {:?}",
        d.to_edge_list(),
        formula,
        oracle
    );
    assert_eq!(formula.pd + formula.depth, d.num_vertices());
}

fn check_certificate(d: &WeightedOrientedGraph) {
    let opts = SplitOptions {
        verify: true,
        ..SplitOptions::default()
    };
    let fc = family_certificate(d, &opts).unwrap_or_else(|e| panic!("{}: {e}", d.to_edge_list()));
    assert!(fc.certificate.verified(), "{}", fc.certificate.render_text());
}

#[test]
fn stars_match_the_oracle() {
    for kind in StarKind::ALL {
        for n in 3..=5 {
            for d in stars(kind, n, &[2, 3, 4]).unwrap() {
                check_against_oracle(&d);
            }
        }
    }
}

#[test]
fn out_and_in_out_stars_agree_with_the_forest_formula() {
    for kind in [StarKind::Out, StarKind::InOut] {
        for d in stars(kind, 5, &[2, 3]).unwrap() {
            let s = star_formula(&d).unwrap();
            let f = forest_formula(&d).unwrap();
            assert!(s.same_invariants(&f));
        }
    }
}

#[test]
fn forests_match_the_oracle() {
    for edges in 1..=4 {
        for d in forests(edges, &[2, 3]).unwrap() {
            check_against_oracle(&d);
            let c = classify(&d).unwrap();
            if c.forest.as_ref().unwrap().components == 1 {
                assert_eq!(evaluate_formula(&d).unwrap().depth, 2);
            }
        }
    }
}

#[test]
fn cycles_match_the_oracle() {
    for n in 3..=5 {
        for d in cycles(n, &[2, 3]).unwrap() {
            check_against_oracle(&d);
            assert_eq!(evaluate_formula(&d).unwrap().depth, 1);
        }
    }
}

#[test]
fn certificates_verify_on_small_families() {
    for n in 3..=5 {
        for d in cycles(n, &[2, 3]).unwrap() {
            check_certificate(&d);
        }
    }
    for edges in 1..=4 {
        for d in forests(edges, &[2]).unwrap() {
            check_certificate(&d);
        }
    }
    for kind in StarKind::ALL {
        for d in stars(kind, 4, &[2, 3]).unwrap() {
            check_certificate(&d);
        }
    }
}

#[test]
fn cycle_spine_has_one_split_per_extra_vertex() {
    for n in 3..=6 {
        let d = &cycles(n, &[2]).unwrap()[0];
        let fc = family_certificate(d, &SplitOptions::default()).unwrap();
        assert_eq!(fc.certificate.spine_splits(), n - 1);
        assert_eq!(fc.certificate.spine().len(), n);
    }
}

#[test]
fn tables_do_not_depend_on_the_field() {
    let q = OracleConfig::default();
    let f2 = OracleConfig::with_field(Field::Prime(2));
    let mut graphs = cycles(4, &[2, 3]).unwrap();
    graphs.extend(forests(3, &[2, 3]).unwrap());
    for kind in StarKind::ALL {
        graphs.extend(stars(kind, 4, &[2, 3]).unwrap());
    }
    for d in &graphs {
        let i = edge_ideal(d).unwrap();
        assert_eq!(
            betti_table(&i, &q).unwrap().entries(),
            betti_table(&i, &f2).unwrap().entries(),
            "{}",
            d.to_edge_list()
        );
    }
}
