from sg_workbench.version import version
__version__ = version
