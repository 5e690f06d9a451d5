//! Transducers, distance automata and uniformization by recognizable
//! relations.

mod distance;
mod synth;
mod transducer;

pub use distance::{
    bounded_distance_value, build_distance_automaton, distance_of_word, is_limited, DistanceAutomaton, Weight,
};
pub use synth::{
    has_finite_shift_subseq_uniformization, has_recognizable_uniformization, synthesize_recognizable_uniformizer,
    uniformizer_to_subseq, verify_uniformizer,
};
pub use transducer::{
    eval_subseq, is_t_controlled, sync_language_of_transducer, transducer_from_sync, Nft, SubseqTransducer,
};
