"""Sub-commands of the graphcert CLI; each module exposes `register` and `run`."""
