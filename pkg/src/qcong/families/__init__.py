"""Sum builders, identities and the family registry."""
