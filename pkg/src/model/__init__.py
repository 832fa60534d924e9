"""Block stacks (networks), parameter movement and checkpoints."""
