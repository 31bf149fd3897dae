//! Deterministic generators for benchmark domains, worked example tasks and
//! random fuzzing tasks.
//!
//! Every generator is a pure function of its parameters: the same
//! parameters (including the seed) always produce a byte-identical task
//! file. Placements the domain leaves open (where packages start, where
//! they must go, ...) are drawn from a ChaCha8 stream seeded by `seed`.

mod domains;
mod examples;
mod random;

use std::fmt;
use std::str::FromStr;

use crate::error::GenError;
use crate::task::Task;

pub use examples::generate_example;
pub use random::{random_task, RANDOM_MAX_DOMAIN, RANDOM_MAX_OPS, RANDOM_MAX_VARS};

/// Road-map shape of a Transport instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoadMap {
    /// Locations on a cycle (diameter `⌊n/2⌋`).
    Cycle,
    /// Locations on a line (diameter `n-1`).
    Line,
    /// Every pair of locations connected (diameter 1).
    Complete,
}

impl FromStr for RoadMap {
    type Err = GenError;
    fn from_str(s: &str) -> Result<Self, GenError> {
        match s {
            "cycle" => Ok(RoadMap::Cycle),
            "line" => Ok(RoadMap::Line),
            "complete" => Ok(RoadMap::Complete),
            _ => Err(GenError::InvalidParam(format!("roads must be cycle, line or complete, got `{s}`"))),
        }
    }
}

impl fmt::Display for RoadMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RoadMap::Cycle => "cycle",
            RoadMap::Line => "line",
            RoadMap::Complete => "complete",
        })
    }
}

/// Parameters of one generated task.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainParams {
    /// One truck per city over the city's locations, airplanes over the
    /// airports (the first location of every city), fully connected.
    Logistics {
        cities: usize,
        locations: usize,
        airplanes: usize,
        packages: usize,
        seed: u64,
    },
    /// Elevator with boarding/departing passengers; origins and
    /// destinations are compiled into the operator set.
    Miconic { floors: usize, passengers: usize, seed: u64 },
    SimpleTsp { locations: usize, seed: u64 },
    /// `c2` fixes the static counter value and so which rewind operator
    /// exists.
    Movie { snacks: usize, c2: bool, seed: u64 },
    Ferry {
        locations: usize,
        cars: usize,
        ferry_goal: bool,
        seed: u64,
    },
    Gripper { balls: usize },
    Transport {
        locations: usize,
        vehicles: usize,
        packages: usize,
        capacity: usize,
        roads: RoadMap,
        vehicle_goals: bool,
        seed: u64,
    },
    /// Worked example `number` (1..=8) with size `n` and, for example 5,
    /// the extra length parameter `k`.
    Example { number: u8, n: usize, k: usize },
}

/// Names accepted by [`DomainParams::parse`].
pub const DOMAIN_NAMES: [&str; 15] = [
    "logistics",
    "miconic",
    "simple_tsp",
    "movie",
    "ferry",
    "gripper",
    "transport",
    "example1",
    "example2",
    "example3",
    "example4",
    "example5",
    "example6",
    "example7",
    "example8",
];

fn take<T: FromStr>(kvs: &mut Vec<(String, String)>, key: &str, default: T) -> Result<T, GenError> {
    match kvs.iter().position(|(k, _)| k == key) {
        None => Ok(default),
        Some(i) => {
            let (_, v) = kvs.remove(i);
            v.parse()
                .map_err(|_| GenError::InvalidParam(format!("cannot parse `{key}={v}`")))
        }
    }
}

fn parse_bool(v: usize) -> bool {
    v != 0
}

impl DomainParams {
    /// Builds parameters from a domain name and `key=value` pairs; missing
    /// keys take small defaults. Unknown keys are rejected.
    pub fn parse(domain: &str, params: &[(String, String)]) -> Result<DomainParams, GenError> {
        let mut kvs = params.to_vec();
        let kvs = &mut kvs;
        let p = match domain {
            "logistics" => DomainParams::Logistics {
                cities: take(kvs, "cities", 1)?,
                locations: take(kvs, "locations", 2)?,
                airplanes: take(kvs, "airplanes", 0)?,
                packages: take(kvs, "packages", 1)?,
                seed: take(kvs, "seed", 0)?,
            },
            "miconic" => DomainParams::Miconic {
                floors: take(kvs, "floors", 3)?,
                passengers: take(kvs, "passengers", 2)?,
                seed: take(kvs, "seed", 0)?,
            },
            "simple_tsp" => DomainParams::SimpleTsp {
                locations: take(kvs, "locations", 3)?,
                seed: take(kvs, "seed", 0)?,
            },
            "movie" => DomainParams::Movie {
                snacks: take(kvs, "snacks", 2)?,
                c2: parse_bool(take(kvs, "c2", 1)?),
                seed: take(kvs, "seed", 0)?,
            },
            "ferry" => DomainParams::Ferry {
                locations: take(kvs, "locations", 2)?,
                cars: take(kvs, "cars", 2)?,
                ferry_goal: parse_bool(take(kvs, "ferry_goal", 0)?),
                seed: take(kvs, "seed", 0)?,
            },
            "gripper" => DomainParams::Gripper {
                balls: take(kvs, "balls", 2)?,
            },
            "transport" => DomainParams::Transport {
                locations: take(kvs, "locations", 4)?,
                vehicles: take(kvs, "vehicles", 1)?,
                packages: take(kvs, "packages", 2)?,
                capacity: take(kvs, "capacity", 2)?,
                roads: take(kvs, "roads", RoadMap::Cycle)?,
                vehicle_goals: parse_bool(take(kvs, "vehicle_goals", 0)?),
                seed: take(kvs, "seed", 0)?,
            },
            other => match other.strip_prefix("example").and_then(|d| d.parse::<u8>().ok()) {
                Some(number @ 1..=8) => {
                    let default_n = match number {
                        2 => 5,
                        3 | 4 | 8 => 3,
                        _ => 2,
                    };
                    DomainParams::Example {
                        number,
                        n: take(kvs, "n", default_n)?,
                        k: take(kvs, "k", 5)?,
                    }
                }
                _ => return Err(GenError::UnknownDomain(other.to_string())),
            },
        };
        if let Some((k, _)) = kvs.first() {
            return Err(GenError::InvalidParam(format!("unknown parameter `{k}` for {domain}")));
        }
        Ok(p)
    }
}

/// Generates the task described by `p`.
pub fn generate(p: &DomainParams) -> Result<Task, GenError> {
    match *p {
        DomainParams::Logistics {
            cities,
            locations,
            airplanes,
            packages,
            seed,
        } => domains::logistics(cities, locations, airplanes, packages, seed),
        DomainParams::Miconic { floors, passengers, seed } => domains::miconic(floors, passengers, seed),
        DomainParams::SimpleTsp { locations, seed } => domains::simple_tsp(locations, seed),
        DomainParams::Movie { snacks, c2, seed } => domains::movie(snacks, c2, seed),
        DomainParams::Ferry {
            locations,
            cars,
            ferry_goal,
            seed,
        } => domains::ferry(locations, cars, ferry_goal, seed),
        DomainParams::Gripper { balls } => domains::gripper(balls),
        DomainParams::Transport {
            locations,
            vehicles,
            packages,
            capacity,
            roads,
            vehicle_goals,
            seed,
        } => domains::transport(locations, vehicles, packages, capacity, roads, vehicle_goals, seed),
        DomainParams::Example { number, n, k } => generate_example(number, n, k),
    }
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), GenError> {
    if cond {
        Ok(())
    } else {
        Err(GenError::InvalidParam(msg()))
    }
}

pub(crate) fn built(b: &crate::task::TaskBuilder) -> Result<Task, GenError> {
    b.build()
        .map_err(|e| GenError::InvalidParam(format!("generated task is invalid: {e}")))
}
