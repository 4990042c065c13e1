//! Support library for the `momentgenus` binary: output records with
//! exact CSV/JSON serialization, and the cross-check driver behind the
//! `verify` subcommand.

pub mod output;
pub mod verify;
