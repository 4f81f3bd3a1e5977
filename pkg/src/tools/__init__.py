# Tools package: stage functions, stage registry and the worker pool.
# Submodules are imported where used so numerical modules can reach the worker pool cheaply.
