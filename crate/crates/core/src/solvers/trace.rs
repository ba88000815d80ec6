//! Event log of a proposal run.
//!
//! Text export, one event per line, names from the instance:
//!
//! ```text
//! propose <r> <h> <count>     count = how many times r has proposed to h, this one included
//! accept <r> <h>              (r, h) is added to M
//! reject-first <r> <h>        (r, h) leaves M, h had not rejected r before
//! reject-full <r> <h>         (r, h) leaves M, r was a worst resident of a full h
//! delete <r> <h>              h is removed from r's working list
//! state <r> <s>               r's list was exhausted; state becomes s, list recovered
//! ```
//!
//! A replacement step is logged as `accept` of the proposer followed by a
//! `reject-*` of the rejected resident, which may be the proposer itself.

use std::fmt::Write as _;

use crate::instance::{Instance, Matching};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    Propose {
        resident: usize,
        hospital: usize,
        count: u8,
    },
    Accept {
        resident: usize,
        hospital: usize,
    },
    RejectFirst {
        resident: usize,
        hospital: usize,
    },
    RejectFull {
        resident: usize,
        hospital: usize,
    },
    Delete {
        resident: usize,
        hospital: usize,
    },
    State {
        resident: usize,
        state: u8,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    events: Vec<Event>,
}

impl Trace {
    pub(crate) fn push(&mut self, e: Event) {
        self.events.push(e);
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn proposals(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, Event::Propose { .. }))
            .count()
    }

    /// Rebuilds the final matching from accept/reject events alone.
    pub fn replay(&self, num_residents: usize) -> Matching {
        let mut m = Matching::empty(num_residents);
        for e in &self.events {
            match *e {
                Event::Accept { resident, hospital } => m.assign(resident, Some(hospital)),
                Event::RejectFirst { resident, hospital }
                | Event::RejectFull { resident, hospital }
                    if m.hospital_of(resident) == Some(hospital) =>
                {
                    m.assign(resident, None);
                }
                _ => {}
            }
        }
        m
    }

    pub fn to_text(&self, instance: &Instance) -> String {
        let r = |i: usize| instance.resident_name(i);
        let h = |j: usize| instance.hospital_name(j);
        let mut out = String::new();
        for e in &self.events {
            let _ = match *e {
                Event::Propose {
                    resident,
                    hospital,
                    count,
                } => {
                    writeln!(out, "propose {} {} {count}", r(resident), h(hospital))
                }
                Event::Accept { resident, hospital } => {
                    writeln!(out, "accept {} {}", r(resident), h(hospital))
                }
                Event::RejectFirst { resident, hospital } => {
                    writeln!(out, "reject-first {} {}", r(resident), h(hospital))
                }
                Event::RejectFull { resident, hospital } => {
                    writeln!(out, "reject-full {} {}", r(resident), h(hospital))
                }
                Event::Delete { resident, hospital } => {
                    writeln!(out, "delete {} {}", r(resident), h(hospital))
                }
                Event::State { resident, state } => writeln!(out, "state {} {state}", r(resident)),
            };
        }
        out
    }
}
