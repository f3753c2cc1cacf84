use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    /// the uniqueness formula is only established off these orders
    #[error("z has order {order} = (2^{h}−1)·2^{k}; the formula assumes z is not a root of unity of order (2^h−1)2^k (override to evaluate anyway)")]
    OrderHypothesis { order: u64, h: u32, k: u32 },
    #[error("invalid phase: {0}")]
    Phase(String),
}
