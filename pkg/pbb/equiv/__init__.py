"""Strong and branching probabilistic bisimilarity"""
