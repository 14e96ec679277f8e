//! Where a command's graph comes from.

use std::fmt;
use std::path::PathBuf;

use clap::Args;
use fracext_core::classification::{construct_family, FamilyMember};
use fracext_core::graph::{cayley_graph, circulant, Graph};
use fracext_core::parse::{parse_cayley, parse_circulant};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::io::read_graph;

/// Exactly one of the graph flags.
#[derive(Debug, Clone, Default, Args)]
pub struct SourceArgs {
    /// Circulant `n:a,b,c`, one residue per ± pair
    #[arg(long, value_name = "N:A,B,..")]
    pub circulant: Option<String>,
    /// Abelian group such as `Z9` or `Z3xZ3`; needs --set
    #[arg(long, requires = "set")]
    pub group: Option<String>,
    /// Connection set such as `{1,3}` or `{(1,0),(1,1)}`; inverses optional
    #[arg(long, requires = "group")]
    pub set: Option<String>,
    /// Family member such as `main-ix:3`
    #[arg(long)]
    pub family: Option<String>,
    /// Graph file, edge list or JSON
    #[arg(long, value_name = "FILE")]
    pub edges: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSource {
    Circulant { spec: String },
    Cayley { group: String, set: String },
    Family { member: String },
    File { path: PathBuf },
}

impl SourceArgs {
    pub fn source(&self) -> Result<GraphSource, CliError> {
        let mut found = Vec::new();
        if let Some(spec) = &self.circulant {
            found.push(GraphSource::Circulant { spec: spec.clone() });
        }
        if let (Some(group), Some(set)) = (&self.group, &self.set) {
            found.push(GraphSource::Cayley {
                group: group.clone(),
                set: set.clone(),
            });
        }
        if let Some(member) = &self.family {
            found.push(GraphSource::Family { member: member.clone() });
        }
        if let Some(path) = &self.edges {
            found.push(GraphSource::File { path: path.clone() });
        }
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            0 => Err(CliError::Usage(
                "a graph is required: --circulant, --group/--set, --family or --edges".into(),
            )),
            _ => Err(CliError::Usage("give exactly one graph source".into())),
        }
    }
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph, CliError> {
        Ok(match self {
            GraphSource::Circulant { spec } => {
                let (n, residues) = parse_circulant(spec)?;
                circulant(n, &residues)?
            }
            GraphSource::Cayley { group, set } => {
                let spec = parse_cayley(group, set)?;
                cayley_graph(&spec.group, &spec.connection_set)?
            }
            GraphSource::Family { member } => {
                let member: FamilyMember = member.parse()?;
                construct_family(member)?
            }
            GraphSource::File { path } => read_graph(path)?,
        })
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::Circulant { spec } => write!(f, "circulant {spec}"),
            GraphSource::Cayley { group, set } => write!(f, "cayley {group} {set}"),
            GraphSource::Family { member } => write!(f, "family {member}"),
            GraphSource::File { path } => write!(f, "file {}", path.display()),
        }
    }
}
