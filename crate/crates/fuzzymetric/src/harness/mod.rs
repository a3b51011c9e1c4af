//! Instance generators and the line-oriented instance file format.

pub mod generators;
pub mod instance;

pub use generators::{
    gen_convergent, gen_escaping, gen_example_empu, gen_example_rnce, gen_nested_intervals, gen_oscillating, gen_random_family,
    random_fuzzy, CutShape, RandomFamilySpec,
};
pub use instance::{emit, emit_record, parse, to_line, Instance, InstanceRecord, Metadata};
