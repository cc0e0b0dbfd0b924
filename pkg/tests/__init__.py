"""
wavelab acceptance tests

Whole experiments driven through the runner on desk-scale grids.
"""
