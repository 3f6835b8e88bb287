//! Emitted files are canonical: parsing what the crate renders gives the
//! same value back, rendering that again gives the same bytes, and each
//! stage of the pipeline can run from the previous stage's file alone.

use pfrep::construction::{construct, realisables_algebraic};
use pfrep::decide::{brute_force_decide, z2, z3};
use pfrep::files::{
    AlgebraFile, DecisionFile, NetworkFile, ProfileFile, RepresentationFile, TraceFile,
};
use pfrep::network::{from_concrete, is_representation, verify_representation};
use pfrep::Representation;

#[test]
fn every_emitted_format_reparses_to_the_same_value() {
    for (name, (alg, rep)) in [("z2", z2()), ("z3", z3())] {
        let af = AlgebraFile::from_algebra(&alg);
        let rendered = af.render();
        let reparsed = AlgebraFile::parse(&rendered).expect("own algebra output parses");
        assert_eq!(reparsed, af, "algebra file value drifts for {name}");
        assert_eq!(
            reparsed.render(),
            rendered,
            "algebra serialization is not byte-stable for {name}"
        );
        assert_eq!(
            reparsed.to_algebra().expect("parsed algebra rebuilds"),
            alg,
            "rebuilt algebra differs from the original for {name}"
        );

        let rf = RepresentationFile::from_representation(&alg, &rep);
        let rendered = rf.render();
        let reparsed = RepresentationFile::parse(&rendered).expect("own representation parses");
        assert_eq!(reparsed, rf, "representation file value drifts for {name}");
        assert_eq!(
            reparsed.render(),
            rendered,
            "representation serialization is not byte-stable for {name}"
        );

        let net = from_concrete(&alg, &rep).expect("the gallery induces a network");
        let nf = NetworkFile::from_network(&net);
        let rendered = nf.render();
        let reparsed = NetworkFile::parse(&rendered).expect("own network output parses");
        assert_eq!(reparsed, nf, "network file value drifts for {name}");
        assert_eq!(
            reparsed
                .to_network(alg.n())
                .expect("parsed network rebuilds"),
            net,
            "rebuilt network differs from the original for {name}"
        );

        let profile = realisables_algebraic(&alg).expect("group signatures are characterized");
        let pf = ProfileFile::from_profile(&alg, &profile);
        let rendered = pf.render();
        let reparsed = ProfileFile::parse(&rendered).expect("own profile output parses");
        assert_eq!(reparsed, pf, "profile file value drifts for {name}");
        assert_eq!(
            reparsed
                .to_profile(&alg)
                .expect("parsed profile recomputes its derived fields"),
            profile,
            "recomputed profile differs from the original for {name}"
        );

        let trace = construct(&alg, &profile, alg.n()).expect("the gallery constructs");
        let tf = TraceFile::from_trace(&alg, &profile, &trace);
        let rendered = tf.render();
        let reparsed = TraceFile::parse(&rendered).expect("own trace output parses");
        assert_eq!(reparsed, tf, "trace file value drifts for {name}");
        assert_eq!(
            reparsed.render(),
            rendered,
            "trace serialization is not byte-stable for {name}"
        );

        let decision = brute_force_decide(&alg, 3).expect("small search runs");
        let df = DecisionFile::from_decision(&alg, &decision);
        let rendered = df.render();
        let reparsed = DecisionFile::parse(&rendered).expect("own decision output parses");
        assert_eq!(
            reparsed.render(),
            rendered,
            "decision serialization is not byte-stable for {name}"
        );
        assert_eq!(
            reparsed.outcome, df.outcome,
            "decision outcome drifts through the file for {name}"
        );
    }
}

#[test]
fn each_stage_runs_from_the_previous_stages_file_alone() {
    // Everything downstream starts from this one rendered string.
    let algebra_json = AlgebraFile::from_algebra(&z2().0).render();

    let alg = AlgebraFile::parse(&algebra_json)
        .expect("stage 1: algebra file parses")
        .to_algebra()
        .expect("stage 1: algebra rebuilds");

    let profile_json =
        ProfileFile::from_profile(&alg, &realisables_algebraic(&alg).unwrap()).render();
    let profile = ProfileFile::parse(&profile_json)
        .expect("stage 2: profile file parses")
        .to_profile(&alg)
        .expect("stage 2: profile recomputes");

    let trace = construct(&alg, &profile, alg.n()).expect("stage 3: construction runs");
    let network_json = NetworkFile::from_network(&trace.network).render();
    let net = NetworkFile::parse(&network_json)
        .expect("stage 4: network file parses")
        .to_network(alg.n())
        .expect("stage 4: network rebuilds");
    assert!(
        is_representation(&net, &alg).pass(),
        "stage 4: the reloaded network should still satisfy the checker"
    );

    let rep = pfrep::network::representation_from_network(&net, &alg)
        .expect("stage 5: functions read back off the network");
    let rep_json = RepresentationFile::from_representation(&alg, &rep).render();
    let (_, base, _, functions) = RepresentationFile::parse(&rep_json)
        .expect("stage 5: representation file parses")
        .to_parts()
        .expect("stage 5: functions resolve against the base");
    let reloaded = Representation { base, functions };
    assert!(
        verify_representation(&alg, &reloaded)
            .expect("stage 5: the reloaded functions induce a network")
            .pass(),
        "stage 5: the reloaded functions should still represent the algebra"
    );
}
