"""
graphcert: non-preparability certificates for qudit graph states in bipartite LOSR networks
"""
