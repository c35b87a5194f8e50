//! K-Means variants, centroid initializers and a reproducible benchmark
//! harness for comparing them.
//!
//! The building blocks are independent: [`init`] picks starting centroids,
//! [`cluster`] runs Lloyd, Hartigan-Wong or K-Medians from them, [`metrics`]
//! scores the result and [`stats`] compares methods. [`gen`] draws labelled
//! benchmark datasets and [`bench`] ties everything into seeded experiments.
//!
//! ```
//! use kmbench::cluster::{Clusterer, LoopConfig};
//! use kmbench::data::Dataset;
//! use kmbench::init::{InitMethod, LofParams};
//! use kmbench::rng::SeededRng;
//!
//! let ds = Dataset::from_1d("toy", &[0.0, 1.0, 2.0, 10.0, 11.0, 12.0]).unwrap();
//! let init = InitMethod::DKMeansPP
//!     .initialize(&ds, 2, &LofParams::default(), &mut SeededRng::new(0, 0))
//!     .unwrap();
//! let run = Clusterer::Lloyd.run(&ds, &init, &LoopConfig::default()).unwrap();
//! assert_eq!(run.wcss, 4.0);
//! ```

pub mod bench;
pub mod cli;
pub mod cluster;
pub mod data;
pub mod distance;
pub mod error;
pub mod gen;
pub mod init;
pub mod metrics;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
