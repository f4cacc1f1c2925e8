//! Garside groups over finite tables of simple elements.
//!
//! The crate covers canonical forms and the group law ([`element`]), built-in
//! and file-based structures ([`providers`]), parabolic substructures
//! ([`parabolic`]), minimal coset representatives and projections onto a
//! parabolic subgroup ([`cosets`]), the coset automaton ([`automaton`]) and
//! its rational growth series ([`growth`]). The [`oracle`] module holds naive
//! reference implementations for testing.

pub mod automaton;
pub mod budget;
pub mod cosets;
pub mod element;
pub mod error;
pub mod growth;
pub mod oracle;
pub mod parabolic;
pub mod providers;
pub mod table;

pub use automaton::CosetAutomaton;
pub use budget::Budget;
pub use cosets::{CosetKey, ProjectionSet};
pub use element::{Element, Letter, NormalFormView, Sign, ViewKind};
pub use error::{Error, Result};
pub use growth::{rational_series, transfer_counts, IntPoly, RationalSeries};
pub use parabolic::{make_parabolic, parabolic_by_name, ParabolicData};
pub use table::{GarsideTable, SimpleId, TableParts};
