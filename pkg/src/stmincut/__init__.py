"""s-t minimum cut in the query model."""
