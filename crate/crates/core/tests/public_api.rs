use hadamard_core::analysis::scan_gap;
use hadamard_core::bounds::{bound_report, special_report, Bound, BoundOptions, TheoremId};
use hadamard_core::identity::exact::lemma_exact;
use hadamard_core::identity::lemma_residual;
use hadamard_core::quad::{QuadConfig, T3Constant};
use hadamard_core::surfaces::{catalog, certify_coordinated, SamplerConfig};
use hadamard_core::{
    make_rect, parse_surface, EvalPoint, NormalizationMode, PowerMeanQ, Rect, SExponent,
};

fn s(v: f64) -> SExponent {
    SExponent::new(v).unwrap()
}

#[test]
fn parsed_polynomial_float_path_tracks_exact_path() {
    let f = parse_surface("3*u^4*v^2 - 2*u*v^3 + u^2 + 1").unwrap();
    let p = f.as_poly().unwrap();
    let r = make_rect(-1.0, 1.5, 0.25, 2.0).unwrap();
    for pt in r.interior_grid(4) {
        let ex = lemma_exact(p, &r, pt, NormalizationMode::Corrected);
        assert!(num_traits::Zero::is_zero(&ex.residual()));
        let fl = lemma_residual(
            &f,
            &r,
            pt,
            NormalizationMode::Corrected,
            &QuadConfig::default(),
        )
        .unwrap();
        assert!(
            fl.residual <= 1e-10 * fl.lhs.abs().max(1.0),
            "{pt:?}: {}",
            fl.residual
        );
    }
}

#[test]
fn scan_cells_agree_with_pointwise_reports() {
    let f = parse_surface("u^2.5*v^3").unwrap();
    let r = make_rect(0.5, 2.5, 1.0, 3.0).unwrap();
    let b = Bound::T3 {
        q: PowerMeanQ::new(2.0).unwrap(),
        constant: T3Constant::Sharpened,
    };
    let opts = BoundOptions::default();
    let g = scan_gap(&b, &f, &r, s(0.5), 4, false, &opts).unwrap();
    assert_eq!(g.grid.len(), 25);
    for c in &g.grid {
        let rep = bound_report(&b, &f, &r, EvalPoint::new(c.x, c.y), s(0.5), &opts).unwrap();
        assert_eq!(rep.margin.to_bits(), c.margin.to_bits());
    }
    assert!(g.grid.iter().all(|c| c.margin >= g.min_margin));
}

#[test]
fn every_special_id_holds_on_the_catalog() {
    let opts = BoundOptions::default();
    let r = make_rect(0.0, 2.0, 0.0, 1.0).unwrap();
    for e in catalog() {
        for id in TheoremId::ALL {
            let Some(fam) = id.family() else { continue };
            let b = match fam {
                hadamard_core::bounds::Family::T1 => Bound::T1,
                hadamard_core::bounds::Family::T2 => Bound::T2 {
                    holder: hadamard_core::HolderPair::from_q(3.0).unwrap(),
                },
                hadamard_core::bounds::Family::T3 => Bound::T3 {
                    q: PowerMeanQ::new(2.0).unwrap(),
                    constant: T3Constant::Sharpened,
                },
            };
            if let Some(rep) = special_report(id, &b, &e.surface, &r, s(0.75), &opts) {
                let rep = rep.unwrap();
                assert_eq!(rep.theorem_id, id);
                assert!(rep.holds, "{} {id}: {rep:?}", e.name);
            }
        }
    }
}

#[test]
fn catalog_surfaces_are_certified_on_the_unit_square() {
    for e in catalog().into_iter().filter(|e| e.f_s_convex) {
        let f = &e.surface;
        let rep = certify_coordinated(
            |u, v| f.eval(u, v).unwrap(),
            &Rect::unit(),
            s(1.0),
            &SamplerConfig::default(),
        )
        .unwrap();
        assert!(rep.passed(), "{}: {rep:?}", e.name);
    }
}
