/// Diagram titles in inventory order, copied from the source list.
pub const TITLES: [&str; 27] = [
    "The Leisure-Work Choice Problem",
    "Individual Labor Supply Curve",
    "Labor Supply Diagram",
    "Two-dimensional Production Function Diagram (Y-L Space)",
    "Marginal Product of Labor (MPL) Diagram",
    "Labor Demand Diagram",
    "Labor Market Equilibrium Diagram",
    "Three-dimensional Production Function Diagram (Y-L-K Space)",
    "Two-dimensional Production Function Diagram (Y-K Space)",
    "Marginal Product of Capital (MPK) Diagram",
    "Capital Demand Diagram",
    "Solow Model",
    "Aggregate Supply (AS) Diagram",
    "A Diagram for General Equilibrium in the Macroeconomy",
    "Money Demand Diagram",
    "Money Market Equilibrium Diagram (Money Supply and Demand)",
    "LM Diagram (Liquidity-Money Diagram)",
    "Labor Market Equilibrium Diagram",
    "Aggregate Demand (AD) Diagram",
    "Phillips Curve",
    "Saving vs. Interest Rate Diagram",
    "National Saving and Investment Model (aka “Classical Cross” Model)",
    "IS Diagram (Investment=Saving Diagram)",
    "IS-LM Model",
    "User Cost of Capital Model",
    "Investment vs. Interest Rate Diagram",
    "Aggregate Expenditure Line (aka “Keynesian Cross” Model)",
];
