pub mod error;
pub mod exactq;
pub mod gfspaces;
pub mod linalg;
pub mod identities;
pub mod grassmann;
pub mod steiner;
pub mod cli;
