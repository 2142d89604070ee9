// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use thiserror::Error;

/// Errors raised by the engine. Agents and goods are reported 0-based; the
/// CLI translates them for display.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("an instance needs at least two agents, got {0}")]
    TooFewAgents(usize),
    #[error("an instance needs at least one good")]
    EmptyGoods,
    #[error("duplicate good name `{0}`")]
    DuplicateGood(String),
    #[error("unknown good name `{0}`")]
    UnknownGood(String),
    #[error("agent {agent} has a negative utility for good {good}")]
    NegativeUtility { agent: usize, good: usize },
    #[error("utility row {agent} has a zero denominator")]
    ZeroDenominator { agent: usize },
    #[error("expected {expected} utility rows, got {got}")]
    RowCount { expected: usize, got: usize },
    #[error("utility row {agent} has {got} entries, expected {expected}")]
    ColumnCount {
        agent: usize,
        expected: usize,
        got: usize,
    },
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
    #[error("allocation does not match the instance: {0}")]
    ShapeMismatch(String),
    #[error("good {good} is not in the bundle of agent {agent}")]
    GoodNotInBundle { agent: usize, good: usize },
    #[error("a move needs two distinct agents")]
    SameAgent,
    #[error("an exchange needs two distinct goods")]
    SameGood,
    #[error("allocations have different size vectors")]
    SizeVectorMismatch,
    #[error("the {0} allocation is not EF1")]
    NotEf1(&'static str),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no EF1-preserving move exists where one is guaranteed: {0}")]
    TheoremViolation(String),
    #[error("search budget of {0} states exceeded")]
    BudgetExceeded(usize),
    #[error("degree imbalance at vertex {0}")]
    Unbalanced(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("multiset sum {0} is odd")]
    OddSum(u64),
    #[error("malformed formula: {0}")]
    MalformedFormula(String),
    #[error("cannot place patches: {0}")]
    Placement(String),
    #[error("unknown catalog fixture `{0}`")]
    UnknownFixture(String),
    #[error("input too large: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
