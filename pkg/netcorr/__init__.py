"""netcorr: network Pearson correlation with certified weight matrices.

Modules:

  graph        edge-list parsing, connectivity, hop distances, Laplacian
  distance     the DistanceMatrix value type
  metrics      effective resistance, embeddings, commute-time embedding
  weights      W = exp(-k D), identity and external weight matrices
  spectral     double centring and the positive-definite / negative-type certificates
  correlation  classical and network Pearson correlation
  scan         random-graph search for shortest-path kernels that fail
  io           CSV readers and writers
  config       YAML + CLI run configuration
  report       plain-text reports
  main         the ``netcorr`` command
"""
