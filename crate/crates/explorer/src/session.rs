//! One exploration: a seed and its framed matrix, mutated together.

use quiverlab::character::{char_frieze, CharacterTable};
use quiverlab::mgs::{Color, FramedMatrix, MgsError};
use quiverlab::repmod::TypeAQuiver;
use quiverlab::seed::{Seed, SeedError};
use quiverlab::{Quiver, QuiverError};
use serde::Serialize;
use thiserror::Error;

/// Cluster variables longer than this are shortened in state responses.
pub const VARIABLE_LIMIT: usize = 400;

#[derive(Debug, Error)]
pub enum SessionError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Mgs(#[from] MgsError),
    #[error("vertex {vertex} outside 1..={n}")]
    BadVertex { vertex: usize, n: usize },
    #[error("history is empty")]
    EmptyHistory,
    #[error("characters need a quiver of type A: {0}")]
    NotTypeA(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Step {
    pub vertex: usize,
    pub green: bool,
}

#[derive(Debug, Clone)]
pub struct Session {
    quiver: Quiver,
    seed: Seed,
    framed: FramedMatrix,
    history: Vec<Step>,
    characters: Option<CharacterTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariableView {
    pub vertex: usize,
    pub text: String,
    pub truncated: bool,
    pub length: usize,
}

/// Everything the browser needs to draw one state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateView {
    pub id: String,
    pub n: usize,
    /// Current mutable quiver, one entry per arrow.
    pub arrows: Vec<[usize; 2]>,
    /// Extended exchange matrix `[B; C]`.
    pub framed_matrix: Vec<Vec<i64>>,
    pub c_vectors: Vec<Vec<i64>>,
    pub colors: Vec<&'static str>,
    pub green: Vec<usize>,
    pub red: Vec<usize>,
    pub variables: Vec<VariableView>,
    pub history: Vec<Step>,
    /// Every c-vector is negative.
    pub mgs_done: bool,
    /// Whether the last move was green; absent before the first move.
    pub green_move: Option<bool>,
    /// Every move so far was green.
    pub green_only: bool,
}

impl Session {
    pub fn new(quiver: Quiver) -> Self {
        Session {
            seed: Seed::initial(&quiver),
            framed: FramedMatrix::framed(&quiver.exchange_matrix()),
            quiver,
            history: Vec::new(),
            characters: None,
        }
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn history(&self) -> &[Step] {
        &self.history
    }

    pub fn mutate(&mut self, vertex: usize) -> Result<(), SessionError> {
        let n = self.n();
        if vertex == 0 || vertex > n {
            return Err(SessionError::BadVertex { vertex, n });
        }
        let green = self.framed.green_vertices()?.contains(&vertex);
        let framed = self.framed.mutate(vertex)?;
        let seed = self.seed.mutate(vertex)?;
        self.framed = framed;
        self.seed = seed;
        self.history.push(Step { vertex, green });
        Ok(())
    }

    /// Drops the last move and rebuilds the state from the initial seed.
    pub fn undo(&mut self) -> Result<(), SessionError> {
        let mut steps = self.history.clone();
        steps.pop().ok_or(SessionError::EmptyHistory)?;
        let mut fresh = Session::new(self.quiver.clone());
        fresh.characters = self.characters.take();
        for step in steps {
            fresh.mutate(step.vertex)?;
        }
        *self = fresh;
        Ok(())
    }

    pub fn hint(&self) -> Result<Vec<usize>, SessionError> {
        Ok(self.framed.green_vertices()?)
    }

    pub fn variable(&self, vertex: usize) -> Result<String, SessionError> {
        let n = self.n();
        if vertex == 0 || vertex > n {
            return Err(SessionError::BadVertex { vertex, n });
        }
        Ok(self.seed.cluster()[vertex - 1].to_string())
    }

    /// Character table of the initial quiver, built on first use.
    pub fn characters(&mut self) -> Result<&CharacterTable, SessionError> {
        if self.characters.is_none() {
            let tq = TypeAQuiver::new(&self.quiver).map_err(|e| SessionError::NotTypeA(e.to_string()))?;
            let table = char_frieze(&tq).map_err(|e| SessionError::NotTypeA(e.to_string()))?;
            self.characters = Some(table);
        }
        Ok(self.characters.as_ref().expect("filled above"))
    }

    pub fn view(&self, id: &str) -> Result<StateView, SessionError> {
        let colors = self.framed.colors()?;
        let pick = |want: Color| -> Vec<usize> {
            colors
                .iter()
                .enumerate()
                .filter(|(_, c)| **c == want)
                .map(|(i, _)| i + 1)
                .collect()
        };
        let variables = self
            .seed
            .cluster()
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let full = x.to_string();
                let length = full.chars().count();
                let text: String = full.chars().take(VARIABLE_LIMIT).collect();
                VariableView {
                    vertex: i + 1,
                    truncated: length > VARIABLE_LIMIT,
                    text,
                    length,
                }
            })
            .collect();
        Ok(StateView {
            id: id.to_string(),
            n: self.n(),
            arrows: self.seed.quiver().to_json().arrows,
            framed_matrix: self.framed.extended(),
            c_vectors: self.framed.c_vectors()?,
            colors: colors
                .iter()
                .map(|c| match c {
                    Color::Green => "green",
                    Color::Red => "red",
                })
                .collect(),
            green: pick(Color::Green),
            red: pick(Color::Red),
            variables,
            history: self.history.clone(),
            mgs_done: colors.iter().all(|c| *c == Color::Red),
            green_move: self.history.last().map(|s| s.green),
            green_only: self.history.iter().all(|s| s.green),
        })
    }
}
