'''
Mittag-Leffler function E_{ρ,μ}(z) from its real-variable integral
representations, with series and closed-form oracles
'''

__version__ = '0.1.0'
