import clr
clr.AddReference('RevitAPI')
from Autodesk.Revit.DB import (
    BuiltInCategory, FamilySymbol, FilteredElementCollector, Level, Line,
    Transaction, Wall, WallType, XYZ,
)
from Autodesk.Revit.DB.Structure import StructuralType

doc = __revit__.ActiveUIDocument.Document
level = FilteredElementCollector(doc).OfClass(Level).FirstElement()

# Extends the wall-creation pattern to wall-hosted families: the
# first symbol of the category is placed at each span midpoint.
symbol = FilteredElementCollector(doc).OfClass(FamilySymbol).OfCategory(BuiltInCategory.OST_Doors).FirstElement()

def wall_at(x1, y1, x2, y2):
    # Walls are matched by their location line endpoints, assuming the
    # wall script above ran against the same document.
    for w in FilteredElementCollector(doc).OfClass(Wall):
        c = w.Location.Curve
        a, b = c.GetEndPoint(0), c.GetEndPoint(1)
        for p, q in ((a, b), (b, a)):
            if (abs(p.X - x1) < 0.01 and abs(p.Y - y1) < 0.01
                    and abs(q.X - x2) < 0.01 and abs(q.Y - y2) < 0.01):
                return w
    raise ValueError('host wall not found')

t = Transaction(doc, 'Place doors')
t.Start()
if not symbol.IsActive:
    symbol.Activate()
host = wall_at(0.0, 0.0, 30.0, 0.0)
doc.Create.NewFamilyInstance(XYZ(13.5, 0.0, 0.0), symbol, host, level, StructuralType.NonStructural)
host = wall_at(0.0, 20.0, 30.0, 20.0)
doc.Create.NewFamilyInstance(XYZ(25.5, 20.0, 0.0), symbol, host, level, StructuralType.NonStructural)
host = wall_at(0.0, 20.0, 30.0, 20.0)
doc.Create.NewFamilyInstance(XYZ(10.5, 20.0, 0.0), symbol, host, level, StructuralType.NonStructural)
host = wall_at(15.0, 30.0, 30.0, 30.0)
doc.Create.NewFamilyInstance(XYZ(18.5, 30.0, 0.0), symbol, host, level, StructuralType.NonStructural)
host = wall_at(0.0, 20.0, 30.0, 20.0)
doc.Create.NewFamilyInstance(XYZ(2.25, 20.0, 0.0), symbol, host, level, StructuralType.NonStructural)
t.Commit()
