//! Problem files, trace documents, graph export and the command line
//! front end.

mod dot;
mod problem;
mod trace;

pub use dot::emit_dot;
pub use problem::{parse_problem, CharacterSpec, ChartSpec, ConfigSpec, GeneratorSpec, ProblemSpec};
pub use trace::{
    center_doc, chart_doc, emit_trace, parse_trace, trace_document, ActionDoc, CenterDoc, CharacterDoc, ChartDoc,
    DescentDoc, LevelDoc, MarkedDoc, NodeDoc, StepDoc, TraceDocument, TRACE_FORMAT, TRACE_VERSION,
};
