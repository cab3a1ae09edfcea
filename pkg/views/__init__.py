# Views module
