//! Exact enumerative machinery for alternating runs, peaks and longest
//! alternating subsequences of permutations.
//!
//! * [`exactnum`]: big rationals, `Q(sqrt d)`, polynomials, truncated series.
//! * [`permcore`]: brute-force statistics over `S_n`.
//! * [`triangles`]: recurrence-generated triangles and polynomial families.
//! * [`grammar`]: context-free grammars and their formal derivative.
//! * [`identities`]: executable checks of every identity relating the above.

pub mod exactnum;
pub mod grammar;
pub mod identities;
pub mod permcore;
pub mod triangles;
