mod fan_basics {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/fan_basics.rs"
    ));
}

mod automorphisms {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/automorphisms.rs"
    ));
}

mod minimal_model {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/minimal_model.rs"
    ));
}

mod k0_bases {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/k0_bases.rs"));
}

mod line_bundle_cohomology {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/line_bundle_cohomology.rs"
    ));
}

mod exceptional_collections {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/exceptional_collections.rs"
    ));
}

mod motivic_decomposition {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/motivic_decomposition.rs"
    ));
}

mod full_pipeline {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/full_pipeline.rs"
    ));
}

#[test]
fn fan_basics_runs() {
    fan_basics::run_example().expect("fan_basics example");
}

#[test]
fn automorphisms_runs() {
    automorphisms::run_example().expect("automorphisms example");
}

#[test]
fn minimal_model_runs() {
    minimal_model::run_example().expect("minimal_model example");
}

#[test]
fn k0_bases_runs() {
    k0_bases::run_example().expect("k0_bases example");
}

#[test]
fn line_bundle_cohomology_runs() {
    line_bundle_cohomology::run_example().expect("line_bundle_cohomology example");
}

#[test]
fn exceptional_collections_runs() {
    exceptional_collections::run_example().expect("exceptional_collections example");
}

#[test]
fn motivic_decomposition_runs() {
    motivic_decomposition::run_example().expect("motivic_decomposition example");
}

#[test]
fn full_pipeline_runs() {
    full_pipeline::run_example().expect("full_pipeline example");
}
